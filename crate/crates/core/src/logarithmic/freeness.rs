use alloc::format;
use alloc::vec::Vec;

use super::problem::LogProblem;
use crate::error::{Error, Result};
use crate::gb::PresentedModule;
use crate::resolution::minimal_resolution;

/// The five projective dimensions attached to a pair `(X, C)`; `None` marks
/// the zero module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessReport {
    pub k: usize,
    /// `projdim Der^k(-log X/C)`.
    pub p1: Option<usize>,
    /// `projdim h Ω^k(log X/C)`.
    pub p2: Option<usize>,
    /// `projdim J_{X/C}` over the ambient ring.
    pub p3: Option<usize>,
    /// `projdim O_X / J_{X/C}`.
    pub p4: Option<usize>,
    /// `projdim R_X`.
    pub p5: Option<usize>,
    pub der_betti: Vec<usize>,
    pub log_forms_betti: Vec<usize>,
    pub residue_betti: Vec<usize>,
    pub free: bool,
}

impl FreenessReport {
    /// The individual criteria, in the order p1, p2, p3, p4, p5.
    pub fn criteria(&self) -> [bool; 5] {
        let k = self.k;
        [
            self.p1 == Some(k - 1),
            self.p2 == Some(k - 1),
            self.p3 == Some(k),
            self.p4.is_none() || self.p4 == Some(k + 1),
            self.p5 != self.p2,
        ]
    }
}

impl LogProblem {
    pub fn freeness_report(&self) -> Result<FreenessReport> {
        let ctx = self.ctx();
        let max = ctx.nvars() + 1;
        let k = self.codim();
        let der = minimal_resolution(ctx, &self.log_kvector_fields()?.presented(ctx), max)?;
        let forms = minimal_resolution(ctx, &self.log_forms_numerator(k)?.presented(ctx), max)?;
        let ox = self.ideal_of_x();
        let jac = self.restricted_jacobian();
        let jac_module = PresentedModule::subquotient(ctx, &jac.to_matrix(), &ox.to_matrix())?;
        let p3 = minimal_resolution(ctx, &jac_module, max)?.length();
        let sing = PresentedModule::quotient_ring(&jac.sum(ox));
        let p4 = minimal_resolution(ctx, &sing, max)?.length();
        let residues = minimal_resolution(ctx, &self.residue_module()?.presented(ctx)?, max)?;
        let report = FreenessReport {
            k,
            p1: der.length(),
            p2: forms.length(),
            p3,
            p4,
            p5: residues.length(),
            der_betti: der.ranks(),
            log_forms_betti: forms.ranks(),
            residue_betti: residues.ranks(),
            free: der.length() == Some(k - 1),
        };
        let c = report.criteria();
        if c.iter().any(|&b| b != c[0]) {
            return Err(Error::Inconsistent(format!("freeness criteria disagree: {:?} for {:?}", c, report)));
        }
        Ok(report)
    }
}
