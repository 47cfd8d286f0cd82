//! Closed-form counts for the standard families.

use num_bigint::BigInt;
use num_traits::{One, Pow};

use super::{TreeCount, TreeError};
use crate::graph::families;
use crate::graph::Multigraph;
use crate::polyseq::{morgan_voyce, w_poly};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Path,
    Cycle,
    Banana,
    Complete,
    /// Apex joined to every vertex of `P_n` by `a` edges.
    Fan,
    /// Apex joined to every vertex of `C_n` by `a` edges.
    Wheel,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Banana => "banana",
            Family::Complete => "complete",
            Family::Fan => "fan",
            Family::Wheel => "wheel",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        [Family::Path, Family::Cycle, Family::Banana, Family::Complete, Family::Fan, Family::Wheel]
            .into_iter()
            .find(|f| f.name() == name)
    }

    fn check(self, n: usize, a: usize) -> Result<(), TreeError> {
        let uses_a = matches!(self, Family::Fan | Family::Wheel);
        if n == 0 || (uses_a && a == 0) {
            return Err(TreeError::OutOfRange { family: self.name(), n, a });
        }
        Ok(())
    }

    /// The family member itself (`a` is ignored outside fans and wheels).
    pub fn build(self, n: usize, a: usize) -> Result<Multigraph, TreeError> {
        self.check(n, a)?;
        Ok(match self {
            Family::Path => families::path(n),
            Family::Cycle => families::cycle(n),
            Family::Banana => families::banana(n),
            Family::Complete => families::complete(n),
            Family::Fan => families::fan(n, a),
            Family::Wheel => families::wheel(n, a),
        })
    }
}

/// `t(P_n) = 1`, `t(C_n) = n`, `t(B_n) = n`, `t(K_n) = n^{n-2}`,
/// fan `a B_{n-1}(a)`, wheel `a W_{n-1}(a)`; all for `n >= 1`, `a >= 1`.
pub fn closed_form(family: Family, n: usize, a: usize) -> Result<TreeCount, TreeError> {
    family.check(n, a)?;
    let a_big = BigInt::from(a);
    Ok(match family {
        Family::Path => BigInt::one(),
        Family::Cycle | Family::Banana => BigInt::from(n),
        Family::Complete if n == 1 => BigInt::one(),
        Family::Complete => Pow::pow(&BigInt::from(n), (n - 2) as u32),
        Family::Fan => &a_big * morgan_voyce(n - 1).eval_int(&a_big),
        Family::Wheel => &a_big * w_poly(n - 1).eval_int(&a_big),
    })
}
