//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the console;
//! the process exits nonzero if any criterion fails.

mod common;

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::{data_file, is_upper_triangular, random_matrix_with, random_quaternion, rel_diff};
use qmc::complex::{cayley_dickson_join, cayley_dickson_split, from_equivalent_complex, to_equivalent_complex};
use qmc::imaging::{inpaint, load_png, psnr, random_mask};
use qmc::linalg::{cqsvd_qqr, equivalent_complex_singular_values, nuclear_norm, qqr, qsvd, unitary_defect};
use qmc::prox::{l21_prox, qsvt_prox, weighted_l21_prox};
use qmc::quaternion::qmul;
use qmc::solvers::{complete, complete_observed, preset_rank, IterationState, Mask, Method, SolverConfig, SolverReport};
use qmc::synth::{low_rank, qdct_sparse_low_rank};
use qmc::transforms::{fqdct_l, iqdct_l, QdctContext};
use qmc::{Quaternion, QuaternionMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = (bool, String);

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("algebra suite", algebra),
        ("factorization suite", factorizations),
        ("CQSVD-QQR vs QSVD", cqsvd_vs_qsvd),
        ("nuclear norm <= L2,1 norm", nuclear_below_l21),
        ("prox oracles", prox_oracles),
        ("QDCT", qdct),
        ("solver fidelity invariants", solver_invariants),
        ("synthetic recovery", synthetic_recovery),
        ("image PSNR ordering", image_ordering),
        ("per-iteration complexity", complexity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, format!("panicked: {msg}"))
        });
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {detail} [{:.2}s]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `1, i, j, k` by index.
fn basis(k: usize) -> Quaternion {
    [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K][k]
}

fn algebra() -> Verdict {
    let start = Instant::now();
    // row × column of the Hamilton table, as (sign, unit index)
    let table = [
        [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
        [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
        [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
        [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
    ];
    for (a, row) in table.iter().enumerate() {
        for (b, &(sign, unit)) in row.iter().enumerate() {
            if qmul(basis(a), basis(b)) != basis(unit) * sign || basis(a) * basis(b) != basis(unit) * sign {
                return (false, format!("unit product {a}·{b} is wrong"));
            }
        }
    }

    let mut r = rng(1);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let (m, k, n) = (r.random_range(1..=32), r.random_range(1..=32), r.random_range(1..=32));
        let a = random_matrix_with(m, k, &mut r);
        let b = random_matrix_with(k, n, &mut r);
        let lhs = to_equivalent_complex(&a.matmul(&b).unwrap());
        let rhs = to_equivalent_complex(&a).matmul(&to_equivalent_complex(&b)).unwrap();
        worst = worst.max(lhs.sub(&rhs).frobenius_norm() / lhs.frobenius_norm());
        worst = worst.max((to_equivalent_complex(&a).frobenius_norm() / a.frobenius_norm() / 2f64.sqrt() - 1.0).abs());
        worst = worst.max(rel_diff(&from_equivalent_complex(&to_equivalent_complex(&a)).unwrap(), &a));
        let (qa, qb) = cayley_dickson_split(&a);
        worst = worst.max(rel_diff(&cayley_dickson_join(&qa, &qb).unwrap(), &a));
    }
    let secs = start.elapsed().as_secs_f64();
    (
        worst <= 1e-10 && secs < 5.0,
        format!("table exact, worst relative residual {worst:.2e} over 200 matrices, {secs:.2}s"),
    )
}

fn factorizations() -> Verdict {
    let start = Instant::now();
    let mut r = rng(2);
    let (mut q_orth, mut q_rec, mut triangular) = (0.0f64, 0.0f64, true);
    let (mut s_rec, mut s_pair) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let (m, n) = (r.random_range(1..=64), r.random_range(1..=48));
        let a = random_matrix_with(m, n, &mut r);
        let f = qqr(&a);
        q_orth = q_orth.max(unitary_defect(&f.q));
        q_rec = q_rec.max(rel_diff(&f.q.matmul(&f.r).unwrap(), &a));
        triangular &= is_upper_triangular(&f.r);

        let s = qsvd(&a);
        s_rec = s_rec.max(rel_diff(&s.reconstruct(), &a));
        let chi = equivalent_complex_singular_values(&a);
        let top = chi[0];
        for (t, sigma) in s.sigma.iter().enumerate() {
            s_pair = s_pair.max((chi[2 * t] - chi[2 * t + 1]).abs() / top);
            s_pair = s_pair.max((sigma - chi[2 * t]).abs() / top);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = q_orth <= 1e-10 && q_rec <= 1e-9 && triangular && s_rec <= 1e-8 && s_pair <= 1e-8 && secs < 30.0;
    (
        pass,
        format!(
            "QQR orth {q_orth:.1e} rec {q_rec:.1e} triangular {triangular}; QSVD rec {s_rec:.1e} pairing {s_pair:.1e}; {secs:.2}s"
        ),
    )
}

fn cqsvd_vs_qsvd() -> Verdict {
    let mut r = rng(3);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let x = random_matrix_with(8, 6, &mut r);
        let tf = cqsvd_qqr(&x, 4, 200, 0.0).unwrap();
        let mut moduli = tf.diagonal_moduli();
        moduli.sort_by(|a, b| b.total_cmp(a));
        let sigma = qsvd(&x).sigma;
        for (d, s) in moduli.iter().zip(&sigma) {
            worst = worst.max((d - s).abs());
        }
    }
    (worst <= 1e-6, format!("worst | |d_ss| - sigma_s | = {worst:.2e} over 20 matrices"))
}

fn nuclear_below_l21() -> Verdict {
    let mut r = rng(4);
    let mut slack = f64::INFINITY;
    for _ in 0..500 {
        let (m, n) = (r.random_range(1..=12), r.random_range(1..=12));
        let a = random_matrix_with(m, n, &mut r);
        slack = slack.min(a.l21_norm() - nuclear_norm(&a));
    }
    (slack >= -1e-9, format!("minimum slack {slack:.3e} over 500 matrices"))
}

/// `min_{t ∈ [0,1]} 4β·t‖y‖ + ½(1 − t)²‖y‖²` by golden-section search.
fn column_oracle(norm: f64, beta: f64) -> f64 {
    let f = |t: f64| 4.0 * beta * t * norm + 0.5 * (1.0 - t).powi(2) * norm * norm;
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > 1e-12 {
        let (a, b) = (hi - g * (hi - lo), lo + g * (hi - lo));
        if f(a) < f(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    f(0.0).min(f(1.0)).min(f(0.5 * (lo + hi)))
}

fn prox_oracles() -> Verdict {
    let mut r = rng(5);
    let (mut obj_gap, mut sv_gap, mut cross_gap) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..50 {
        let (m, n) = (r.random_range(1..=8), r.random_range(1..=8));
        let y = random_matrix_with(m, n, &mut r);
        let beta = r.random_range(0.0..0.6);
        let (x, _) = l21_prox(&y, beta).unwrap();
        let objective = 4.0 * beta * x.l21_norm() + 0.5 * (&x - &y).frobenius_norm_sqr();
        let oracle: f64 = y.column_norms().iter().map(|&c| column_oracle(c, beta)).sum();
        obj_gap = obj_gap.max((objective - oracle).abs());

        let mu = r.random_range(0.0..1.5);
        let before = qsvd(&y).sigma;
        let after = qsvd(&qsvt_prox(&y, mu).unwrap()).sigma;
        for (s, t) in before.iter().zip(&after) {
            sv_gap = sv_gap.max((t - (s - mu).max(0.0)).abs());
        }

        let mu = r.random_range(0.1..5.0);
        let weighted = weighted_l21_prox(&y, &vec![4.0 * beta * mu; n], mu).unwrap();
        cross_gap = cross_gap.max(weighted.max_abs_diff(&x));
    }
    let pass = obj_gap <= 1e-6 && sv_gap <= 1e-8 && cross_gap <= 1e-10;
    (
        pass,
        format!("objective gap {obj_gap:.1e}, QSVT spectrum gap {sv_gap:.1e}, factor-4 identity gap {cross_gap:.1e}"),
    )
}

/// Definition of the left-handed QDCT as a direct double sum.
fn qdct_direct(axis: Quaternion, a: &QuaternionMatrix) -> QuaternionMatrix {
    let (m, n) = a.shape();
    let alpha = |k: usize, len: usize| if k == 0 { (1.0 / len as f64).sqrt() } else { (2.0 / len as f64).sqrt() };
    QuaternionMatrix::from_fn(m, n, |p, s| {
        let mut acc = Quaternion::ZERO;
        for x in 0..m {
            for y in 0..n {
                let w = alpha(p, m)
                    * alpha(s, n)
                    * (PI * (2 * x + 1) as f64 * p as f64 / (2 * m) as f64).cos()
                    * (PI * (2 * y + 1) as f64 * s as f64 / (2 * n) as f64).cos();
                acc += qmul(axis, a.get(x, y)) * w;
            }
        }
        acc
    })
}

fn pure_unit(q: Quaternion) -> Quaternion {
    Quaternion::pure(q.x, q.y, q.z).unit().unwrap_or(Quaternion::I)
}

fn qdct() -> Verdict {
    let mut r = rng(6);
    let (mut round, mut parseval, mut direct) = (0.0f64, 0.0f64, 0.0f64);
    for trial in 0..20 {
        let (m, n) = if trial < 10 { (8, 8) } else { (r.random_range(1..=24), r.random_range(1..=24)) };
        let axis = if trial % 2 == 0 {
            Quaternion::gray_axis()
        } else {
            pure_unit(random_quaternion(&mut r))
        };
        let ctx = QdctContext::with_axis(axis, m, n).unwrap();
        let a = random_matrix_with(m, n, &mut r);
        let b = fqdct_l(&ctx, &a).unwrap();
        round = round.max(rel_diff(&iqdct_l(&ctx, &b).unwrap(), &a));
        parseval = parseval.max((b.frobenius_norm() / a.frobenius_norm() - 1.0).abs());
        if (m, n) == (8, 8) {
            direct = direct.max(b.max_abs_diff(&qdct_direct(axis, &a)));
        }
    }
    (
        round <= 1e-10 && parseval <= 1e-10 && direct <= 1e-9,
        format!("round trip {round:.1e}, Parseval {parseval:.1e}, direct sum on 8x8 {direct:.1e}"),
    )
}

/// Runs a solver while checking the per-iteration invariants; returns the
/// report and the first violation, if any.
fn checked_run(observed: &QuaternionMatrix, mask: &Mask, cfg: &SolverConfig) -> (SolverReport, Option<String>) {
    let mut violation = None;
    let mut last_mu = 0.0;
    let target = mask.project(observed).unwrap();
    let report = complete_observed(observed, mask, cfg, &mut |s: &IterationState<'_>| {
        if violation.is_some() {
            return;
        }
        let it = s.iteration;
        if mask.project(s.x).unwrap() != target {
            violation = Some(format!("fidelity broken at iteration {it}"));
        } else if unitary_defect(s.l) > 1e-8 || unitary_defect(&s.rfac.conj_transpose()) > 1e-8 {
            violation = Some(format!("orthonormality lost at iteration {it}"));
        } else if s.mu < last_mu || s.mu > cfg.mu_max {
            violation = Some(format!("mu not monotone at iteration {it}"));
        } else if s.shrinkage.iter().any(|c| !(0.0..=1.0).contains(c)) {
            violation = Some(format!("shrinkage outside [0,1] at iteration {it}"));
        }
        last_mu = s.mu;
    })
    .unwrap();
    (report, violation)
}

fn solver_invariants() -> Verdict {
    let mut runs = 0;
    for (seed, mr) in [(70u64, 0.3), (71, 0.6), (72, 0.85)] {
        let truth = low_rank(32, 28, 4, seed).unwrap();
        let mask = random_mask(32, 28, mr, seed).unwrap();
        let observed = mask.project(&truth).unwrap();
        for method in Method::ALL {
            let mut cfg = SolverConfig::new(method, 8);
            cfg.max_iter = 120;
            cfg.mu_max = 50.0;
            let (a, violation) = checked_run(&observed, &mask, &cfg);
            if let Some(v) = violation {
                return (false, format!("{method}: {v}"));
            }
            let b = complete(&observed, &mask, &cfg).unwrap();
            if a.x != b.x || a.factors != b.factors || a.relative_changes() != b.relative_changes() {
                return (false, format!("{method}: reruns differ"));
            }
            runs += 1;
        }
    }
    (true, format!("{runs} runs: fidelity exact, orthonormality, mu, shrinkage, bit-determinism"))
}

fn synthetic_recovery() -> Verdict {
    let start = Instant::now();
    let truth = low_rank(64, 64, 5, 80).unwrap();
    let mask = random_mask(64, 64, 0.5, 81).unwrap();
    let observed = mask.project(&truth).unwrap();

    let qlnm_cfg = SolverConfig::new(Method::QlnmQqr, 10);
    let (qlnm, v1) = checked_run(&observed, &mask, &qlnm_cfg);
    let e_qlnm = rel_diff(&qlnm.x, &truth);

    // V equal to the true rank; the image default V = 3 also penalizes two of
    // the five true components here (reported below for reference)
    let mut ir_cfg = SolverConfig::new(Method::IrqlnmQqr, 10);
    ir_cfg.v = 5;
    let (ir, v2) = checked_run(&observed, &mask, &ir_cfg);
    let e_ir = rel_diff(&ir.x, &truth);
    let e_ir_v3 = rel_diff(&complete(&observed, &mask, &SolverConfig::new(Method::IrqlnmQqr, 10)).unwrap().x, &truth);

    let ctx = QdctContext::new(64, 64);
    let sparse_truth = qdct_sparse_low_rank(64, 64, 8, 0.1, 82, &ctx).unwrap();
    let sparse_mask = random_mask(64, 64, 0.75, 83).unwrap();
    let sparse_obs = sparse_mask.project(&sparse_truth).unwrap();
    let (sr, v3) = checked_run(&sparse_obs, &sparse_mask, &SolverConfig::new(Method::QlnmQqrSr, 8));
    let (base, v4) = checked_run(&sparse_obs, &sparse_mask, &SolverConfig::new(Method::QlnmQqr, 8));
    let (e_sr, e_base) = (rel_diff(&sr.x, &sparse_truth), rel_diff(&base.x, &sparse_truth));

    let secs = start.elapsed().as_secs_f64();
    let violation = [v1, v2, v3, v4].into_iter().flatten().next();
    let pass = e_qlnm <= 5e-2
        && qlnm.iterations <= 300
        && e_ir <= e_qlnm + 1e-3
        && e_sr < e_base
        && violation.is_none()
        && secs < 120.0;
    (
        pass,
        format!(
            "QLNM {e_qlnm:.2e} ({} it), IR(V=5) {e_ir:.2e} ({} it) [V=3: {e_ir_v3:.2e}], sparse: SR {e_sr:.2e} vs QLNM {e_base:.2e}{}; {secs:.1}s",
            qlnm.iterations,
            ir.iterations,
            violation.map(|v| format!(", {v}")).unwrap_or_default()
        ),
    )
}

fn image_ordering() -> Verdict {
    let img = load_png(data_file("astronaut_128.png")).unwrap();
    let (h, w) = (img.height(), img.width());
    let mut pass = true;
    let mut parts = Vec::new();
    for mr in [0.5, 0.85] {
        let mask = random_mask(h, w, mr, 2024).unwrap();
        let score = |method: Method| {
            let rank = preset_rank(method, mr, h, w).unwrap();
            let (out, _) = inpaint(&img, &mask, &SolverConfig::new(method, rank)).unwrap();
            psnr(&img, &out.quantized()).unwrap()
        };
        let (q, ir, sr) = (score(Method::QlnmQqr), score(Method::IrqlnmQqr), score(Method::QlnmQqrSr));
        pass &= sr > ir && ir >= q - 0.1;
        parts.push(format!("MR {mr}: SR {sr:.2} > IR {ir:.2} >= QLNM {q:.2} - 0.1"));
    }
    (pass, format!("astronaut 128x128 dB, {}", parts.join("; ")))
}

fn median_iteration_ms(n: usize) -> f64 {
    let truth = low_rank(n, n, 16, 0).unwrap();
    let mask = random_mask(n, n, 0.5, 0).unwrap();
    let mut cfg = SolverConfig::new(Method::QlnmQqr, 16);
    cfg.tol = 0.0;
    cfg.max_iter = 15;
    let rep = complete(&mask.project(&truth).unwrap(), &mask, &cfg).unwrap();
    let mut ms: Vec<f64> = rep.history.iter().map(|h| h.seconds * 1e3).collect();
    ms.sort_by(f64::total_cmp);
    ms[ms.len() / 2]
}

fn complexity() -> Verdict {
    let t256 = median_iteration_ms(256);
    let t512 = median_iteration_ms(512);
    let ratio = t512 / t256;
    (
        ratio <= 3.0,
        format!("median iteration 256: {t256:.2} ms, 512: {t512:.2} ms, ratio {ratio:.2} (bound 3.0)"),
    )
}
