//! Square Boolean matrices with bit-packed rows.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::text::{directives, parse_num};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    n: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl Gf2Matrix {
    pub fn zeros(n: usize) -> Gf2Matrix {
        let words = n.div_ceil(WORD).max(1);
        Gf2Matrix {
            n,
            words,
            rows: vec![vec![0; words]; n],
        }
    }

    pub fn identity(n: usize) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of `0`/`1` characters.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Gf2Matrix> {
        let n = rows.len();
        let mut m = Gf2Matrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.chars().count() != n {
                return Err(Error::Invalid(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for (j, ch) in row.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    _ => return Err(Error::Invalid(format!("row {i}: unexpected character {ch:?}"))),
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let bit = 1u64 << (j % WORD);
        if value {
            self.rows[i][j / WORD] |= bit;
        } else {
            self.rows[i][j / WORD] &= !bit;
        }
    }

    /// `row[dst] ^= row[src]`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        for w in 0..self.words {
            let v = self.rows[src][w];
            self.rows[dst][w] ^= v;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    pub fn is_identity(&self) -> bool {
        *self == Gf2Matrix::identity(self.n)
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = Gf2Matrix::zeros(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                if self.get(i, k) {
                    for w in 0..self.words {
                        out.rows[i][w] ^= rhs.rows[k][w];
                    }
                }
            }
        }
        out
    }

    /// `self · x` for a bit vector `x`.
    pub fn mul_vec(&self, x: &[bool]) -> Vec<bool> {
        (0..self.n)
            .map(|i| (0..self.n).filter(|&j| self.get(i, j) && x[j]).count() % 2 == 1)
            .collect()
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..self.n {
            let Some(p) = (rank..self.n).find(|&r| m.get(r, col)) else {
                continue;
            };
            m.swap_rows(rank, p);
            for r in 0..self.n {
                if r != rank && m.get(r, col) {
                    m.add_row(rank, r);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    pub fn inverse(&self) -> Result<Gf2Matrix> {
        let mut m = self.clone();
        let mut inv = Gf2Matrix::identity(self.n);
        for col in 0..self.n {
            let p = (col..self.n).find(|&r| m.get(r, col)).ok_or(Error::Singular)?;
            m.swap_rows(col, p);
            inv.swap_rows(col, p);
            for r in 0..self.n {
                if r != col && m.get(r, col) {
                    m.add_row(col, r);
                    inv.add_row(col, r);
                }
            }
        }
        Ok(inv)
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, rng.gen());
            }
        }
        m
    }

    /// Uniform over invertible matrices, by rejection.
    pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Gf2Matrix {
        loop {
            let m = Gf2Matrix::random(n, rng);
            if m.is_invertible() {
                return m;
            }
        }
    }

    pub fn row_string(&self, i: usize) -> String {
        (0..self.n).map(|j| if self.get(i, j) { '1' } else { '0' }).collect()
    }

    /// Text form: `gf2 N` then `N` rows of `N` characters from `{0,1}`.
    pub fn parse(text: &str) -> Result<Gf2Matrix> {
        let mut lines = directives(text);
        let (line, head) = lines.next().ok_or(Error::Parse {
            line: 1,
            reason: "missing `gf2 N` header".into(),
        })?;
        let n = match head.as_slice() {
            ["gf2", n] => parse_num(n, line)?,
            _ => {
                return Err(Error::Parse {
                    line,
                    reason: "first directive must be `gf2 N`".into(),
                })
            }
        };
        let (rows, last) = read_rows(&mut lines, n, line)?;
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse {
                line,
                reason: "unexpected content after matrix rows".into(),
            });
        }
        Gf2Matrix::from_rows(&rows).map_err(|e| Error::Parse {
            line: last,
            reason: e.to_string(),
        })
    }

    pub fn emit(&self) -> String {
        let mut out = format!("gf2 {}\n", self.n);
        for i in 0..self.n {
            out.push_str(&self.row_string(i));
            out.push('\n');
        }
        out
    }
}

/// Pulls `n` single-token rows of length `n` out of a directive stream.
pub(crate) fn read_rows<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    n: usize,
    header_line: usize,
) -> Result<(Vec<String>, usize)> {
    let mut rows = Vec::with_capacity(n);
    let mut last = header_line;
    for _ in 0..n {
        let (line, toks) = lines.next().ok_or(Error::Parse {
            line: last + 1,
            reason: format!("expected {n} matrix rows"),
        })?;
        last = line;
        match toks.as_slice() {
            [row] if row.len() == n && row.chars().all(|c| c == '0' || c == '1') => rows.push(row.to_string()),
            _ => {
                return Err(Error::Parse {
                    line,
                    reason: format!("expected a row of {n} characters from {{0,1}}"),
                })
            }
        }
    }
    Ok((rows, last))
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            writeln!(f, "  {}", self.row_string(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 5, 63, 64, 65, 130] {
            let m = Gf2Matrix::random_invertible(n, &mut rng);
            let inv = m.inverse().unwrap();
            assert!(m.mul(&inv).is_identity(), "n = {n}");
            assert!(inv.mul(&m).is_identity(), "n = {n}");
        }
    }

    #[test]
    fn singular_is_detected() {
        let m = Gf2Matrix::from_rows(&["11", "11"]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.inverse(), Err(Error::Singular));
    }

    #[test]
    fn mul_vec_agrees_with_mul() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Gf2Matrix::random(9, &mut rng);
        let b = Gf2Matrix::random(9, &mut rng);
        let x: Vec<bool> = (0..9).map(|_| rng.gen()).collect();
        assert_eq!(a.mul(&b).mul_vec(&x), a.mul_vec(&b.mul_vec(&x)));
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn text_format() {
        let m = Gf2Matrix::parse("# swap\ngf2 2\n01\n10\n").unwrap();
        assert_eq!(m, Gf2Matrix::from_rows(&["01", "10"]).unwrap());
        assert_eq!(Gf2Matrix::parse(&m.emit()).unwrap(), m);
        assert!(matches!(
            Gf2Matrix::parse("gf2 2\n01\n1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(Gf2Matrix::parse("gf2 2\n01\n10\n11\n").is_err());
        assert!(Gf2Matrix::parse("gf2 2\n0a\n10\n").is_err());
    }
}
