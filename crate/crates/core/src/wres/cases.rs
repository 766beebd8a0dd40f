use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// One term of the boundary sum: orders `r` of the composite and `ℓ` of the
/// inverse, with `k` ξₙ-derivatives, `j` normal x-derivatives and `|α|`
/// tangent derivative pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CaseIndex {
    pub r: i32,
    pub l: i32,
    pub k: u32,
    pub j: u32,
    pub alpha: u32,
}

impl CaseIndex {
    pub fn new(r: i32, l: i32, k: u32, j: u32, alpha: u32) -> Self {
        Self { r, l, k, j, alpha }
    }

    /// `r + ℓ - k - j - |α| - 1`, which must equal `-n`.
    pub fn total(&self) -> i32 {
        self.r + self.l - self.k as i32 - self.j as i32 - self.alpha as i32 - 1
    }
}

impl fmt::Display for CaseIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, l={}, k={}, j={}, |alpha|={})", self.r, self.l, self.k, self.j, self.alpha)
    }
}

/// All solutions of `r + ℓ - k - j - |α| - 1 = -n` with `r ≤ order_a`,
/// `ℓ ≤ order_b` and nonnegative `k, j, |α|`, in a fixed order.
pub fn enumerate_cases(n: u8, order_a: i32, order_b: i32) -> Result<Vec<CaseIndex>> {
    if n < 3 {
        return Err(Error::Validation("dimension ≥ 3 required".into()));
    }
    let target = -(n as i32);
    let mut out = Vec::new();
    // k + j + |α| = r + ℓ - 1 + n ≥ 0 bounds both orders from below
    let floor = target + 1;
    for r in (floor - order_b..=order_a).rev() {
        for l in (floor - r..=order_b).rev() {
            let rest = r + l - 1 - target;
            if rest < 0 {
                continue;
            }
            let rest = rest as u32;
            for alpha in (0..=rest).rev() {
                for j in (0..=rest - alpha).rev() {
                    let k = rest - alpha - j;
                    out.push(CaseIndex::new(r, l, k, j, alpha));
                }
            }
        }
    }
    Ok(out)
}
