//! ROC curve of the optimal membership test, its AUC and the tangent that
//! recovers delta(epsilon).

use psi_dp::profile::delta_of_epsilon;
use psi_dp::tradeoff::{auc, auc_by_quadrature, operating_point, roc, tangent_intercept};
use psi_dp::{GaussianMechanismParams, Result};

fn main() -> Result<()> {
    let params = GaussianMechanismParams::new(2.0, 1.0)?;
    let psi = params.psi()?;

    for x in [1e-4, 1e-3, 0.01, 0.1, 0.5] {
        println!("R({x:<6}) = {:.6}", roc(psi, x)?);
    }
    println!("AUC closed form {:.12}, quadrature {:.12}", auc(psi), auc_by_quadrature(psi));

    let op = operating_point(&params, 1.0)?;
    println!("threshold c = 1: FPR {:.6}, TPR {:.6}", op.fpr, op.tpr);

    let t = tangent_intercept(psi, 1.0)?;
    println!(
        "tangent of slope e^1 touches at ({:.6}, {:.6}); intercept {:.10}",
        t.tangency_x, t.tangency_y, t.intercept
    );
    println!("delta(1)                                     {:.10}", delta_of_epsilon(psi, 1.0)?);
    Ok(())
}
