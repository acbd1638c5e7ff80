use std::fmt;

use crate::error::{Error, Result};

/// A bijection on `0..n`, read as "element `i` goes to `self[i]`".
///
/// Schedules use it as the logical-wire to physical-site map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation((0..n).collect())
    }

    /// `i -> n-1-i`.
    pub fn reversal(n: usize) -> Permutation {
        Permutation((0..n).rev().collect())
    }

    pub fn new(map: Vec<usize>) -> Result<Permutation> {
        let mut seen = vec![false; map.len()];
        for &v in &map {
            if v >= map.len() || seen[v] {
                return Err(Error::InvalidPermutation(format!("{map:?} is not a bijection")));
            }
            seen[v] = true;
        }
        Ok(Permutation(map))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Permutation(inv)
    }

    /// `self` followed by `next`: `i -> next[self[i]]`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&v| next.0[v]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// True when the map is increasing or decreasing, i.e. a chain stays a chain.
    pub fn is_monotone(&self) -> bool {
        let inc = self.0.windows(2).all(|w| w[0] < w[1]);
        let dec = self.0.windows(2).all(|w| w[0] > w[1]);
        inc || dec
    }
}

impl std::ops::Index<usize> for Permutation {
    type Output = usize;

    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl std::str::FromStr for Permutation {
    type Err = Error;

    /// Parses a comma- or space-separated list of images.
    fn from_str(s: &str) -> Result<Permutation> {
        let map = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(format!("bad entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!("1,0,2".parse::<Permutation>().is_ok());
    }

    #[test]
    fn composition_and_inverse() {
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(p.then(&p).as_slice(), &[1, 2, 0]);
    }

    #[test]
    fn monotone() {
        assert!(Permutation::identity(4).is_monotone());
        assert!(Permutation::reversal(4).is_monotone());
        assert!(!Permutation::new(vec![0, 2, 1, 3]).unwrap().is_monotone());
    }
}
