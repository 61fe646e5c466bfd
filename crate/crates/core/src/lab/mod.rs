//! Verifiers, proof machinery and the conjecture search.

pub mod gen;
pub mod machinery;
pub mod report;
pub mod search;
pub mod verify;

use serde_json::json;

use crate::multiaffine;
use crate::rat::{self, Rat};
use crate::Result;

pub use machinery::{find_mu_star, pinch_decomposition, MuStar, PinchDecomposition};
pub use report::{VerdictReport, VerifyRequest};
pub use search::{search_conjectures, SearchConfig, SearchOutput};
pub use verify::verify;

/// Report for the multivariate counterexample: the verdict is membership of
/// `−1 − e₁` in `Ab(p ⊞ p)`, the detail lists every exact check.
pub fn counterexample_report(eps: &Rat) -> Result<(VerdictReport, bool)> {
    let p = multiaffine::counterexample_p();
    let sq = multiaffine::boxplus_gamma(&p, &p)?;
    let point = multiaffine::counterexample_point();
    let mut rep = verify::verify_above_roots(&sq, &point, eps)?;
    let checks = multiaffine::counterexample_checks();
    let all_ok = checks.iter().all(|c| c.ok);
    rep.detail["p"] = json!(p);
    rep.detail["p_boxplus_p"] = json!(sq.to_string());
    rep.detail["value"] = json!(rat::format(&sq.meval(&point)));
    rep.detail["checks"] = json!(checks);
    rep.detail["all_checks_pass"] = json!(all_ok);
    if rep.witness.is_some() {
        rep.witness = Some(rep.detail.clone());
    }
    Ok((rep, all_ok))
}
