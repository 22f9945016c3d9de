use serde::Serialize;

use crate::classifier::{is_saturated, is_strongly_closed};
use crate::error::{Error, Result};
use crate::fusion::FusionSystem;

use super::{centralizer_subsystem, fusion_isomorphic, product_with_factors, quotient_fusion};

/// Structural checks on `F = F1 × F2` with `F1` over an extraspecial group of
/// order `p^3` and `F2` over an abelian group `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub prime: u64,
    pub product_order: usize,
    /// `A` is strongly closed in `F`.
    pub strongly_closed: bool,
    /// `F/A ≅ F1`.
    pub quotient_isomorphic: bool,
    /// `C_F(A)/A ≅ F1`.
    pub centralizer_quotient_isomorphic: bool,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.strongly_closed && self.quotient_isomorphic && self.centralizer_quotient_isomorphic
    }
}

pub fn main_theorem_witness(f1: &FusionSystem, f2: &FusionSystem) -> Result<WitnessReport> {
    let p = f1.prime();
    let s1 = f1.group();
    let order = (p * p * p) as usize;
    if s1.order() != order || s1.is_abelian() || p == 2 {
        return Err(Error::InvalidParameter(
            "first factor must be over an extraspecial group of order p^3, p odd".into(),
        ));
    }
    if !f2.group().is_abelian() {
        return Err(Error::InvalidParameter(
            "second factor must be over an abelian group".into(),
        ));
    }
    for f in [f1, f2] {
        if !is_saturated(f).verdict {
            return Err(Error::InvalidParameter("factors must be saturated".into()));
        }
    }
    let prod = product_with_factors(f1, f2)?;
    let f = &prod.fusion;
    let a = prod.second;
    let strongly_closed = is_strongly_closed(f, a);
    let quotient_isomorphic = strongly_closed && {
        let (q, _) = quotient_fusion(f, a)?;
        fusion_isomorphic(&q, f1)?.is_some()
    };
    let c = centralizer_subsystem(f, a)?;
    let a_in_c = c.object(f.subgroup(a))?;
    let centralizer_quotient_isomorphic = is_strongly_closed(&c, a_in_c) && {
        let (q, _) = quotient_fusion(&c, a_in_c)?;
        fusion_isomorphic(&q, f1)?.is_some()
    };
    Ok(WitnessReport {
        prime: p,
        product_order: f.group().order(),
        strongly_closed,
        quotient_isomorphic,
        centralizer_quotient_isomorphic,
    })
}
