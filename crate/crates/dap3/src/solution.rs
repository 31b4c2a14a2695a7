//! Solved problems: the three filled matrices, the minimum element, a record
//! of where each supply cell's value lives on the demand side, and the
//! reduction trace.

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::pair::PairShape;
use crate::problem::Dap3;
use crate::rat::{MatrixError, Rat, RatMatrix};

/// Which demand matrix a supply cell's value belongs to under the multiset
/// identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    FromU,
    FromV,
}

/// One reduction performed by the recursive solver: the pair size `b`, the
/// shape data of the b- and (b-1)-pairs, and the reduced problem itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub b: u64,
    #[serde(skip)]
    pub shape: PairShape,
    pub child: Dap3,
}

/// A feasible solution: completed matrices with exact rowsums, the multiset
/// identity between T and U + V, and `g` the smallest element.
#[derive(Debug, Clone)]
pub struct Solution {
    pub t: RatMatrix,
    pub u: RatMatrix,
    pub v: RatMatrix,
    pub g: Rat,
    /// Per-cell provenance of T, parallel to `t`'s rows.
    pub t_origin: Vec<Vec<Origin>>,
    pub trace: Vec<ReductionStep>,
}

impl Solution {
    /// Assembles a solution from completed matrices, computing `g`.
    pub fn assemble(
        t: RatMatrix,
        u: RatMatrix,
        v: RatMatrix,
        t_origin: Vec<Vec<Origin>>,
        trace: Vec<ReductionStep>,
    ) -> Result<Solution, MatrixError> {
        let g = t
            .min_cell()
            .ok_or(MatrixError::EmptyCell { row: 0, col: 0 })?;
        for row in 0..t.rows() {
            t.row(row)?;
        }
        u.to_rows()?;
        v.to_rows()?;
        Ok(Solution { t, u, v, g, t_origin, trace })
    }

    /// Cell-wise image under an increasing map; `g` is recomputed, the trace
    /// does not survive (it described the unmapped problem).
    pub fn map_cells(&self, f: impl Fn(&Rat) -> Rat) -> Solution {
        let map = |m: &RatMatrix| {
            let rows = m
                .to_rows()
                .expect("mapping a complete solution")
                .into_iter()
                .map(|row| row.iter().map(&f).collect())
                .collect();
            RatMatrix::from_rows(rows)
        };
        let t = map(&self.t);
        let g = t.min_cell().expect("nonempty T");
        Solution {
            t,
            u: map(&self.u),
            v: map(&self.v),
            g,
            t_origin: self.t_origin.clone(),
            trace: Vec::new(),
        }
    }

    /// Number of reductions recorded on the way to a 0-problem.
    pub fn depth(&self) -> u64 {
        self.trace.len() as u64
    }
}

fn serialize_matrix<S: Serializer>(m: &RatMatrix, ser: S) -> Result<S::Ok, S::Error> {
    let rows = m.to_rows().map_err(serde::ser::Error::custom)?;
    let mut seq = ser.serialize_seq(Some(rows.len()))?;
    for row in rows {
        seq.serialize_element(&row)?;
    }
    seq.end()
}

impl Serialize for Solution {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Solution", 5)?;
        s.serialize_field("value", &self.g)?;
        struct M<'a>(&'a RatMatrix);
        impl Serialize for M<'_> {
            fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
                serialize_matrix(self.0, ser)
            }
        }
        s.serialize_field("T", &M(&self.t))?;
        s.serialize_field("U", &M(&self.u))?;
        s.serialize_field("V", &M(&self.v))?;
        s.serialize_field("trace", &self.trace)?;
        s.end()
    }
}

/// Wire form of a solution, used when reading one back for verification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionFile {
    pub value: Rat,
    #[serde(rename = "T")]
    pub t: Vec<Vec<Rat>>,
    #[serde(rename = "U")]
    pub u: Vec<Vec<Rat>>,
    #[serde(rename = "V")]
    pub v: Vec<Vec<Rat>>,
}

impl SolutionFile {
    pub fn matrices(&self) -> (RatMatrix, RatMatrix, RatMatrix) {
        (
            RatMatrix::from_rows(self.t.clone()),
            RatMatrix::from_rows(self.u.clone()),
            RatMatrix::from_rows(self.v.clone()),
        )
    }
}
