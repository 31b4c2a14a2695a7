//! Exact rational scalars, rational matrices with optional cells, and piece
//! multisets. Every number in this crate is a [`Rat`]; there is no floating
//! point and no tolerance anywhere.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::opcount;

/// An exact rational number in canonical form (`den > 0`, `gcd(|num|, den) = 1`).
///
/// Canonicalization is enforced by the underlying `BigRational` after every
/// operation, so equality is structural and the total order is exact.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rat(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatParseError {
    #[error("malformed rational literal {0:?} (expected [-]digits[/digits])")]
    Malformed(String),
    #[error("zero denominator in rational literal {0:?}")]
    ZeroDenominator(String),
}

impl Rat {
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Rat {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The integer value, when the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    /// Decimal rendering with `digits` fractional digits, for display only.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = &self.0 * BigRational::from_integer(scale.clone());
        let rounded = scaled.round().to_integer();
        let neg = rounded.is_negative();
        let mag = rounded.abs();
        let (ipart, fpart) = (mag.clone() / &scale, mag % &scale);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{ipart}")
        } else {
            format!("{sign}{ipart}.{fpart:0>width$}", width = digits as usize)
        }
    }
}

/// Parses `[-]?digits(/digits)?` into a canonical rational.
impl FromStr for Rat {
    type Err = RatParseError;

    fn from_str(text: &str) -> Result<Rat, RatParseError> {
        let malformed = || RatParseError::Malformed(text.to_owned());
        let (num_str, den_str) = match text.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (text, None),
        };
        let digits_ok = |s: &str, signed: bool| {
            let body = if signed { s.strip_prefix('-').unwrap_or(s) } else { s };
            !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
        };
        if !digits_ok(num_str, true) {
            return Err(malformed());
        }
        let num: BigInt = num_str.parse().map_err(|_| malformed())?;
        let den: BigInt = match den_str {
            None => BigInt::one(),
            Some(d) if digits_ok(d, false) => d.parse().map_err(|_| malformed())?,
            Some(_) => return Err(malformed()),
        };
        if den.is_zero() {
            return Err(RatParseError::ZeroDenominator(text.to_owned()));
        }
        Ok(Rat(BigRational::new(num, den)))
    }
}

/// Formats as `p/q`, or `p` alone when the denominator is 1. This is the wire
/// format for all JSON and CSV output; it round-trips through [`Rat::from_str`].
impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! rat_from_int {
    ($($ty:ty),*) => {
        $(impl From<$ty> for Rat {
            fn from(n: $ty) -> Rat {
                Rat::from_int(n)
            }
        })*
    };
}

rat_from_int!(i32, i64, u32, u64);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Rat, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(de::Error::custom)
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix has an empty cell at row {row}, column {col}")]
    EmptyCell { row: usize, col: usize },
    #[error("row {row} of a {rows}x{cols} matrix is already full")]
    RowFull { row: usize, rows: usize, cols: usize },
}

/// A rational matrix whose cells are empty until assigned. Partially-filled
/// states are first-class: the constructive algorithms fill cells one at a
/// time and the checks below refuse to sum or export an incomplete matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<Option<Rat>>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix { rows, cols, cells: vec![None; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> RatMatrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        let cells = rows.into_iter().flatten().map(Some).collect();
        RatMatrix { rows: nrows, cols: ncols, cells }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&Rat> {
        self.cells[row * self.cols + col].as_ref()
    }

    /// Assigns one cell. Counted as one primitive operation.
    pub fn set(&mut self, row: usize, col: usize, value: Rat) {
        let cell = &mut self.cells[row * self.cols + col];
        assert!(cell.is_none(), "cell ({row}, {col}) assigned twice");
        *cell = Some(value);
        opcount::bump(1);
    }

    /// Assigns the leftmost empty cell of `row`.
    pub fn fill_next(&mut self, row: usize, value: Rat) -> Result<usize, MatrixError> {
        let col = (0..self.cols)
            .find(|&c| self.get(row, c).is_none())
            .ok_or(MatrixError::RowFull { row, rows: self.rows, cols: self.cols })?;
        self.set(row, col, value);
        Ok(col)
    }

    pub fn unfilled_in_row(&self, row: usize) -> usize {
        (0..self.cols).filter(|&c| self.get(row, c).is_none()).count()
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    /// Moves a fully-populated row in wholesale, without per-cell accounting
    /// (used when relocating rows already built and counted elsewhere).
    pub fn adopt_row(&mut self, row: usize, values: Vec<Rat>) {
        assert_eq!(values.len(), self.cols);
        for (col, v) in values.into_iter().enumerate() {
            let cell = &mut self.cells[row * self.cols + col];
            assert!(cell.is_none(), "cell ({row}, {col}) assigned twice");
            *cell = Some(v);
        }
    }

    pub fn row_sum(&self, row: usize) -> Result<Rat, MatrixError> {
        let mut sum = Rat::zero();
        for col in 0..self.cols {
            match self.get(row, col) {
                Some(v) => sum = sum + v,
                None => return Err(MatrixError::EmptyCell { row, col }),
            }
        }
        Ok(sum)
    }

    pub fn row(&self, row: usize) -> Result<Vec<Rat>, MatrixError> {
        (0..self.cols)
            .map(|col| {
                self.get(row, col).cloned().ok_or(MatrixError::EmptyCell { row, col })
            })
            .collect()
    }

    pub fn to_rows(&self) -> Result<Vec<Vec<Rat>>, MatrixError> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn min_cell(&self) -> Option<Rat> {
        self.cells.iter().flatten().min().cloned()
    }

    pub fn max_cell(&self) -> Option<Rat> {
        self.cells.iter().flatten().max().cloned()
    }

    pub fn cells(&self) -> impl Iterator<Item = &Rat> {
        self.cells.iter().flatten()
    }

    pub fn multiset(&self) -> Result<PieceMultiset, MatrixError> {
        if let Some(idx) = self.cells.iter().position(Option::is_none) {
            return Err(MatrixError::EmptyCell { row: idx / self.cols, col: idx % self.cols });
        }
        Ok(PieceMultiset::from_values(self.cells.iter().flatten().cloned()))
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                match self.get(r, c) {
                    Some(v) => write!(f, "{v} ")?,
                    None => write!(f, "_ ")?,
                }
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// The multiset of matrix elements: sorted `(value, count)` pairs with
/// strictly increasing values and positive counts.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PieceMultiset {
    entries: Vec<(Rat, u64)>,
}

impl PieceMultiset {
    pub fn from_values<I: IntoIterator<Item = Rat>>(values: I) -> PieceMultiset {
        let mut sorted: Vec<Rat> = values.into_iter().collect();
        sorted.sort();
        let mut entries: Vec<(Rat, u64)> = Vec::new();
        for v in sorted {
            match entries.last_mut() {
                Some((last, count)) if *last == v => *count += 1,
                _ => entries.push((v, 1)),
            }
        }
        PieceMultiset { entries }
    }

    /// Multiset union (counts add).
    pub fn union(&self, other: &PieceMultiset) -> PieceMultiset {
        let mut entries: Vec<(Rat, u64)> = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let take_left = match (self.entries.get(i), other.entries.get(j)) {
                (Some((a, _)), Some((b, _))) => match a.cmp(b) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => {
                        entries.push((a.clone(), self.entries[i].1 + other.entries[j].1));
                        i += 1;
                        j += 1;
                        continue;
                    }
                },
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if take_left {
                entries.push(self.entries[i].clone());
                i += 1;
            } else {
                entries.push(other.entries[j].clone());
                j += 1;
            }
        }
        PieceMultiset { entries }
    }

    pub fn entries(&self) -> &[(Rat, u64)] {
        &self.entries
    }

    pub fn total_count(&self) -> u64 {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    pub fn min(&self) -> Option<&Rat> {
        self.entries.first().map(|(v, _)| v)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Debug for PieceMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}x{c}")?;
        }
        write!(f, "}}")
    }
}

/// The multiset of all elements across several completed matrices.
pub fn multiset_of(matrices: &[&RatMatrix]) -> Result<PieceMultiset, MatrixError> {
    let mut out = PieceMultiset::default();
    for m in matrices {
        out = out.union(&m.multiset()?);
    }
    Ok(out)
}

/// Exact per-row sums of a completed matrix.
pub fn rowsums(m: &RatMatrix) -> Result<Vec<Rat>, MatrixError> {
    (0..m.rows()).map(|r| m.row_sum(r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn parse_canonicalizes() {
        assert_eq!("7/6".parse::<Rat>().unwrap(), r(7, 6));
        assert_eq!("4/8".parse::<Rat>().unwrap(), r(1, 2));
        assert_eq!("-0/5".parse::<Rat>().unwrap(), Rat::zero());
        assert_eq!("-0/5".parse::<Rat>().unwrap().to_string(), "0");
        assert_eq!("3".parse::<Rat>().unwrap(), Rat::from_int(3));
    }

    #[test]
    fn parse_rejects_malformed() {
        for bad in ["", "/", "1/", "/2", "a", "1/-2", "1/2/3", "1 /2", "--1"] {
            assert!(
                matches!(bad.parse::<Rat>(), Err(RatParseError::Malformed(_))),
                "expected malformed: {bad:?}"
            );
        }
        assert!(matches!(
            "3/0".parse::<Rat>(),
            Err(RatParseError::ZeroDenominator(_))
        ));
    }

    #[test]
    fn display_round_trips() {
        for v in [r(7, 6), r(-3, 4), Rat::zero(), Rat::from_int(42)] {
            assert_eq!(v.to_string().parse::<Rat>().unwrap(), v);
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(r(3, 10).to_decimal(4), "0.3000");
        assert_eq!(r(-1, 3).to_decimal(3), "-0.333");
        assert_eq!(r(5, 12).to_decimal(6), "0.416667");
    }

    #[test]
    fn matrix_partial_fill() {
        let mut m = RatMatrix::new(2, 2);
        assert!(!m.is_complete());
        m.set(0, 0, r(1, 2));
        m.fill_next(0, r(1, 2)).unwrap();
        assert!(m.row_sum(0).unwrap() == Rat::one());
        assert!(matches!(m.row_sum(1), Err(MatrixError::EmptyCell { row: 1, col: 0 })));
        m.set(1, 0, r(1, 3));
        m.set(1, 1, r(2, 3));
        assert!(m.is_complete());
        assert_eq!(rowsums(&m).unwrap(), vec![Rat::one(), Rat::one()]);
    }

    #[test]
    fn multiset_table2_u_matrix() {
        // 4x2 demand matrix holding {3/10 x2, 2/5 x4, 1/2 x2}
        let u = RatMatrix::from_rows(vec![
            vec![r(3, 10), r(1, 2)],
            vec![r(3, 10), r(1, 2)],
            vec![r(2, 5), r(2, 5)],
            vec![r(2, 5), r(2, 5)],
        ]);
        let ms = u.multiset().unwrap();
        assert_eq!(
            ms.entries(),
            &[(r(3, 10), 2), (r(2, 5), 4), (r(1, 2), 2)]
        );
        assert_eq!(multiset_of(&[]).unwrap(), PieceMultiset::default());
        let one = RatMatrix::from_rows(vec![vec![r(5, 7)]]);
        assert_eq!(
            multiset_of(&[&one, &one]).unwrap().entries(),
            &[(r(5, 7), 2)]
        );
    }

    #[test]
    fn rowsum_examples() {
        let m = RatMatrix::from_rows(vec![vec![r(3, 10), r(7, 10)]]);
        assert_eq!(rowsums(&m).unwrap(), vec![Rat::one()]);
        let z = RatMatrix::from_rows(vec![vec![Rat::zero(), Rat::zero()]]);
        assert_eq!(rowsums(&z).unwrap(), vec![Rat::zero()]);
        let h = RatMatrix::from_rows(vec![vec![r(11, 15) - r(1, 2), r(1, 2)]]);
        assert_eq!(rowsums(&h).unwrap(), vec![r(11, 15)]);
    }
}
