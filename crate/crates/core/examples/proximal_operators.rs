//! Column shrinkage, singular value thresholding and entrywise soft threshold.

use qmc::linalg::qsvd;
use qmc::prox::{l21_prox, qsvt_prox, soft_threshold_elementwise, weighted_l21_prox};
use qmc::synth::low_rank;

fn main() -> qmc::Result<()> {
    let y = low_rank(6, 4, 4, 5)?;
    let beta = 0.2;

    let (x, shrink) = l21_prox(&y, beta)?;
    println!("column norms   {:?}", rounded(&y.column_norms()));
    println!("shrink factors {:?}", rounded(&shrink.coefficients));
    println!("‖X‖_2,1 = {:.4} (input {:.4})", x.l21_norm(), y.l21_norm());

    // the weighted variant reproduces the same map with threshold 4β
    let mu = 2.0;
    let w = weighted_l21_prox(&y, &vec![4.0 * beta * mu; y.cols()], mu)?;
    println!("weighted vs plain: {:.2e}", w.max_abs_diff(&x));

    let t = qsvt_prox(&y, 1.0)?;
    println!("σ before QSVT {:?}", rounded(&qsvd(&y).sigma));
    println!("σ after  QSVT {:?}", rounded(&qsvd(&t).sigma));

    let s = soft_threshold_elementwise(&y, 1.0)?;
    let zeros = s.to_vec().iter().filter(|q| q.is_zero()).count();
    println!("soft threshold 1.0 zeroed {zeros} of {} entries", y.rows() * y.cols());
    Ok(())
}

fn rounded(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| (x * 1e4).round() / 1e4).collect()
}
