//! The three solvers on synthetic low-rank data with half the entries missing.

use qmc::imaging::random_mask;
use qmc::solvers::{complete, Method, SolverConfig};
use qmc::synth::{low_rank, qdct_sparse_low_rank};
use qmc::transforms::QdctContext;

fn main() -> qmc::Result<()> {
    let truth = low_rank(64, 64, 5, 80)?;
    let mask = random_mask(64, 64, 0.5, 81)?;
    let observed = mask.project(&truth)?;
    println!("64x64 rank-5 matrix, {} of {} entries observed", mask.observed_count(), 64 * 64);

    for method in [Method::QlnmQqr, Method::IrqlnmQqr] {
        let mut cfg = SolverConfig::new(method, 10);
        cfg.v = 5;
        let rep = complete(&observed, &mask, &cfg)?;
        let err = (&rep.x - &truth).frobenius_norm() / truth.frobenius_norm();
        println!("{method:>12}: error {err:.2e} after {} iterations", rep.iterations);
    }

    let ctx = QdctContext::new(64, 64);
    let sparse = qdct_sparse_low_rank(64, 64, 8, 0.1, 82, &ctx)?;
    let mask = random_mask(64, 64, 0.75, 83)?;
    let observed = mask.project(&sparse)?;
    println!("QDCT-sparse rank-8 matrix, 75% missing");
    for method in [Method::QlnmQqr, Method::QlnmQqrSr] {
        let rep = complete(&observed, &mask, &SolverConfig::new(method, 8))?;
        let err = (&rep.x - &sparse).frobenius_norm() / sparse.frobenius_norm();
        println!("{method:>12}: error {err:.2e} after {} iterations", rep.iterations);
    }
    Ok(())
}
