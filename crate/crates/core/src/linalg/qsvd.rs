//! Quaternion SVD through the complex SVD of the equivalent complex matrix.
//!
//! Every singular value of `A` appears twice among those of `χ(A)`. A complex
//! singular vector `[c₁; c₂]` of `χ(A)` is the first column of `χ(q)` for the
//! quaternion vector `q = c₁ − c₂* j`, and `χ(A)v = σu` translates into
//! `A q_v = σ q_u`. Each pair (more generally each cluster of equal singular
//! values) spans only half as many quaternion directions, so the quaternion
//! vectors of a cluster are picked by pivoted Gram–Schmidt: the candidate with
//! the largest residual against the directions already kept wins, and the same
//! right-quaternion coefficients are applied to the left vector so that
//! `A v = σ u` survives the orthogonalization.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::complex::to_equivalent_complex;
use crate::matrix::QuaternionMatrix;
use crate::quaternion::Quaternion;

/// Singular values closer than this (relative to the largest) form one cluster.
const CLUSTER_TOL: f64 = 1e-9;
/// Candidates whose orthogonal residual falls below this norm are dependent.
const RESIDUAL_FLOOR: f64 = 1e-6;

/// Thin QSVD `A = u·diag(sigma)·vᴴ` with `k = min(M, N)` columns.
#[derive(Clone, Debug)]
pub struct QsvdResult {
    pub u: QuaternionMatrix,
    pub sigma: Vec<f64>,
    pub v: QuaternionMatrix,
    /// Largest relative mismatch `|s_{2t} − s_{2t+1}| / s_max` between the
    /// paired singular values of `χ(A)` before pair-collapsing.
    pub pairing_defect: f64,
}

impl QsvdResult {
    /// `u·diag(sigma)·vᴴ`.
    pub fn reconstruct(&self) -> QuaternionMatrix {
        let us = self.u.scale_columns(&self.sigma).expect("sigma length matches u");
        us.matmul_adjoint(&self.v).expect("u and v share k")
    }
}

/// Singular values of `χ(A)` in nonincreasing order.
pub fn equivalent_complex_singular_values(a: &QuaternionMatrix) -> Vec<f64> {
    let chi = to_equivalent_complex(a).to_nalgebra();
    if chi.nrows() == 0 || chi.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = chi.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

fn to_quaternion_vector(c: &[Complex64]) -> Vec<Quaternion> {
    let n = c.len() / 2;
    (0..n)
        .map(|i| {
            let a = c[i];
            let b = -c[n + i].conj();
            Quaternion::new(a.re, a.im, b.re, b.im)
        })
        .collect()
}

fn inner(a: &[Quaternion], b: &[Quaternion]) -> Quaternion {
    a.iter().zip(b).fold(Quaternion::ZERO, |acc, (x, y)| acc + x.conj() * *y)
}

fn norm(a: &[Quaternion]) -> f64 {
    a.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
}

/// Coefficients `cᵢ = basisᵢᴴ x` and the residual `x − Σ basisᵢ cᵢ`
/// (two passes of classical Gram–Schmidt).
fn orthogonalize(basis: &[Vec<Quaternion>], x: &[Quaternion]) -> (Vec<Quaternion>, Vec<Quaternion>) {
    let mut coeffs = vec![Quaternion::ZERO; basis.len()];
    let mut res = x.to_vec();
    for _ in 0..2 {
        for (b, total) in basis.iter().zip(coeffs.iter_mut()) {
            let c = inner(b, &res);
            *total += c;
            for (r, bi) in res.iter_mut().zip(b) {
                *r -= *bi * c;
            }
        }
    }
    (coeffs, res)
}

fn apply_coeffs(basis: &[Vec<Quaternion>], coeffs: &[Quaternion], x: &[Quaternion]) -> Vec<Quaternion> {
    let mut out = x.to_vec();
    for (b, c) in basis.iter().zip(coeffs) {
        for (o, bi) in out.iter_mut().zip(b) {
            *o -= *bi * *c;
        }
    }
    out
}

/// Pivoted Gram–Schmidt over `candidates`, adding up to `quota` unit vectors to `basis`.
fn extend_basis(basis: &mut Vec<Vec<Quaternion>>, mut candidates: Vec<Vec<Quaternion>>, quota: usize) -> usize {
    let mut added = 0;
    while added < quota && !candidates.is_empty() {
        let (best, res, rn) = candidates
            .iter()
            .enumerate()
            .map(|(idx, c)| {
                let (_, res) = orthogonalize(basis, c);
                let rn = norm(&res);
                (idx, res, rn)
            })
            .max_by(|a, b| a.2.total_cmp(&b.2))
            .expect("non-empty candidates");
        if rn < RESIDUAL_FLOOR {
            break;
        }
        basis.push(res.into_iter().map(|q| q / rn).collect());
        candidates.swap_remove(best);
        added += 1;
    }
    added
}

fn unit_vectors(n: usize) -> Vec<Vec<Quaternion>> {
    (0..n)
        .map(|i| {
            let mut e = vec![Quaternion::ZERO; n];
            e[i] = Quaternion::ONE;
            e
        })
        .collect()
}

fn columns_to_matrix(rows: usize, cols: &[Vec<Quaternion>]) -> QuaternionMatrix {
    QuaternionMatrix::from_fn(rows, cols.len(), |r, c| cols[c][r])
}

/// Thin quaternion SVD of `a`.
pub fn qsvd(a: &QuaternionMatrix) -> QsvdResult {
    let (m, n) = a.shape();
    let k = m.min(n);
    if k == 0 {
        return QsvdResult {
            u: QuaternionMatrix::zeros(m, 0),
            sigma: Vec::new(),
            v: QuaternionMatrix::zeros(n, 0),
            pairing_defect: 0.0,
        };
    }

    let chi: DMatrix<Complex64> = to_equivalent_complex(a).to_nalgebra();
    let svd = chi.svd(true, true);
    let cu = svd.u.expect("left vectors requested");
    let cvt = svd.v_t.expect("right vectors requested");
    let s = svd.singular_values;

    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&x, &y| s[y].total_cmp(&s[x]));
    let sorted: Vec<f64> = order.iter().map(|&i| s[i]).collect();
    let smax = sorted[0];

    let pairing_defect = if smax > 0.0 {
        sorted
            .chunks(2)
            .map(|p| if p.len() == 2 { (p[0] - p[1]).abs() / smax } else { 0.0 })
            .fold(0.0, f64::max)
    } else {
        0.0
    };

    let left = |idx: usize| -> Vec<Quaternion> {
        let col: Vec<Complex64> = cu.column(idx).iter().copied().collect();
        to_quaternion_vector(&col)
    };
    let right = |idx: usize| -> Vec<Quaternion> {
        let col: Vec<Complex64> = cvt.row(idx).iter().map(|z| z.conj()).collect();
        to_quaternion_vector(&col)
    };

    let zero_tol = CLUSTER_TOL * smax;
    let mut us: Vec<Vec<Quaternion>> = Vec::with_capacity(k);
    let mut vs: Vec<Vec<Quaternion>> = Vec::with_capacity(k);
    let mut sigma: Vec<f64> = Vec::with_capacity(k);

    let mut start = 0;
    while start < sorted.len() && us.len() < k {
        let lead = sorted[start];
        if lead <= zero_tol {
            break;
        }
        let mut end = start + 1;
        while end < sorted.len() && lead - sorted[end] <= CLUSTER_TOL * smax {
            end += 1;
        }
        let members = &order[start..end];
        let quota = ((end - start) / 2).max(1).min(k - us.len());
        let value = sorted[start..end].iter().sum::<f64>() / (end - start) as f64;

        let mut candidates: Vec<(Vec<Quaternion>, Vec<Quaternion>)> =
            members.iter().map(|&idx| (right(idx), left(idx))).collect();
        for _ in 0..quota {
            let scored = candidates
                .iter()
                .enumerate()
                .map(|(i, (v, _))| {
                    let (coeffs, res) = orthogonalize(&vs, v);
                    let rn = norm(&res);
                    (i, coeffs, res, rn)
                })
                .max_by(|a, b| a.3.total_cmp(&b.3));
            let Some((best, coeffs, res, rn)) = scored else { break };
            if rn < RESIDUAL_FLOOR {
                break;
            }
            let (_, u_cand) = candidates.swap_remove(best);
            let u_new = apply_coeffs(&us, &coeffs, &u_cand);
            vs.push(res.into_iter().map(|q| q / rn).collect());
            us.push(u_new.into_iter().map(|q| q / rn).collect());
            sigma.push(value);
        }
        start = end;
    }

    // Null directions: complete u and v independently, preferring the
    // remaining complex singular vectors before falling back to unit vectors.
    if us.len() < k {
        let rest = &order[start.min(order.len())..];
        let need = k - us.len();
        let mut u_cands: Vec<Vec<Quaternion>> = rest.iter().map(|&i| left(i)).collect();
        u_cands.extend(unit_vectors(m));
        let mut v_cands: Vec<Vec<Quaternion>> = rest.iter().map(|&i| right(i)).collect();
        v_cands.extend(unit_vectors(n));
        let mut u_basis = us;
        let mut v_basis = vs;
        let got_u = extend_basis(&mut u_basis, u_cands, need);
        let got_v = extend_basis(&mut v_basis, v_cands, need);
        debug_assert_eq!(got_u, need);
        debug_assert_eq!(got_v, need);
        us = u_basis;
        vs = v_basis;
        sigma.resize(us.len().min(vs.len()), 0.0);
    }

    QsvdResult {
        u: columns_to_matrix(m, &us),
        sigma,
        v: columns_to_matrix(n, &vs),
        pairing_defect,
    }
}

/// `Σ σ_s(A)`.
pub fn nuclear_norm(a: &QuaternionMatrix) -> f64 {
    qsvd(a).sigma.iter().sum()
}
