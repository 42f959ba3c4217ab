#![allow(clippy::needless_range_loop)]

//! Oracle checks for the model layer: the closed-form precision algebra is
//! compared against dense linear algebra, the density against numerical
//! normalization, and the sampler against its target moments.

use vrsp_core::math::integrate;
use vrsp_core::model::{
    ActionVector, DecisionMass, IntraclassModel, MeanVector, NormalSource, psi_from_delta,
};

/// Dense Gauss-Jordan inverse; test-side oracle, independent of the
/// closed-form path under test.
fn dense_inverse(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut ext = row.clone();
            ext.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            ext
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| m[r][col].abs().partial_cmp(&m[s][col].abs()).unwrap())
            .unwrap();
        m.swap(col, pivot);
        let p = m[col][col];
        for v in m[col].iter_mut() {
            *v /= p;
        }
        for row in 0..n {
            if row != col {
                let factor = m[row][col];
                for j in 0..2 * n {
                    m[row][j] -= factor * m[col][j];
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Dense log determinant by LU elimination (no pivoting needed for SPD).
fn dense_log_det(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut acc = 0.0;
    for col in 0..n {
        acc += m[col][col].ln();
        let pivot_row = m[col].clone();
        for row in col + 1..n {
            let f = m[row][col] / pivot_row[col];
            for (j, &pv) in pivot_row.iter().enumerate().skip(col) {
                m[row][j] -= f * pv;
            }
        }
    }
    acc
}

fn sigma_matrix(k: usize, sigma2: f64, rho: f64) -> Vec<Vec<f64>> {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { sigma2 } else { sigma2 * rho })
                .collect()
        })
        .collect()
}

fn dense_log_density(z: &[f64], mu: &[f64], sigma: &[Vec<f64>]) -> f64 {
    let k = z.len();
    let inv = dense_inverse(sigma);
    let d: Vec<f64> = z.iter().zip(mu).map(|(a, b)| a - b).collect();
    let mut quad = 0.0;
    for i in 0..k {
        for j in 0..k {
            quad += d[i] * inv[i][j] * d[j];
        }
    }
    -0.5 * (k as f64 * (2.0 * std::f64::consts::PI).ln() + dense_log_det(sigma) + quad)
}

#[test]
fn log_density_matches_dense_oracle() {
    let mut src = NormalSource::for_block(2024, 0);
    for k in [2usize, 3, 4] {
        for trial in 0..50 {
            let rho_lo = if k == 1 { -1.0 } else { -1.0 / (k as f64 - 1.0) };
            let rho = rho_lo + (1.0 - rho_lo) * (0.05 + 0.9 * frac(&mut src));
            let sigma2 = 0.5 + 2.0 * frac(&mut src);
            let model = IntraclassModel::new(k, sigma2, rho).unwrap();
            let z: Vec<f64> = (0..k).map(|_| 2.0 * src.next_normal()).collect();
            let mu_vec: Vec<f64> = (0..k).map(|_| src.next_normal().abs()).collect();
            let mu = MeanVector::new(mu_vec.clone()).unwrap();
            let fast = model.log_density(&z, &mu).unwrap();
            let dense = dense_log_density(&z, &mu_vec, &sigma_matrix(k, sigma2, rho));
            let rel = (fast - dense).abs() / dense.abs().max(1.0);
            assert!(rel < 1e-10, "k={k} trial={trial}: {fast} vs {dense}");
        }
    }
}

#[test]
fn precision_apply_matches_dense_oracle() {
    let mut src = NormalSource::for_block(77, 0);
    for k in [2usize, 3, 4] {
        for _ in 0..50 {
            let rho_lo = -1.0 / (k as f64 - 1.0);
            let rho = rho_lo + (1.0 - rho_lo) * (0.05 + 0.9 * frac(&mut src));
            let sigma2 = 0.5 + 2.0 * frac(&mut src);
            let model = IntraclassModel::new(k, sigma2, rho).unwrap();
            let x: Vec<f64> = (0..k).map(|_| 3.0 * src.next_normal()).collect();
            let fast = model.precision_apply(&x).unwrap();
            let inv = dense_inverse(&sigma_matrix(k, sigma2, rho));
            for i in 0..k {
                let dense: f64 = (0..k).map(|j| inv[i][j] * x[j]).sum();
                assert!(
                    (fast[i] - dense).abs() <= 1e-10 * dense.abs().max(1.0),
                    "k={k}: {} vs {dense}",
                    fast[i]
                );
            }
        }
    }
}

fn frac(src: &mut NormalSource) -> f64 {
    // uniform-ish in (0,1) from a normal stream; only used to spread tests
    let x = src.next_normal().abs();
    x - x.floor()
}

#[test]
fn density_normalizes_k1() {
    let model = IntraclassModel::new(1, 1.7, 0.0).unwrap();
    let mu = MeanVector::new(vec![0.4]).unwrap();
    let s = 1.7f64.sqrt();
    let mass = integrate(
        |z| model.log_density(&[z], &mu).unwrap().exp(),
        0.4 - 8.0 * s,
        0.4 + 8.0 * s,
        1e-9,
    )
    .unwrap();
    assert!((mass - 1.0).abs() < 1e-6, "mass = {mass}");
}

#[test]
fn density_normalizes_k2() {
    let model = IntraclassModel::new(2, 1.3, 0.6).unwrap();
    let mu = MeanVector::new(vec![0.3, 1.2]).unwrap();
    let s = 1.3f64.sqrt();
    let (a1, b1) = (0.3 - 8.0 * s, 0.3 + 8.0 * s);
    let (a2, b2) = (1.2 - 8.0 * s, 1.2 + 8.0 * s);
    let mass = integrate(
        |z1| {
            integrate(
                |z2| model.log_density(&[z1, z2], &mu).unwrap().exp(),
                a2,
                b2,
                1e-9,
            )
            .unwrap()
        },
        a1,
        b1,
        1e-8,
    )
    .unwrap();
    assert!((mass - 1.0).abs() < 1e-6, "mass = {mass}");
}

#[test]
fn density_is_exchangeable() {
    let model = IntraclassModel::new(4, 1.1, 0.35).unwrap();
    let mut src = NormalSource::for_block(5150, 0);
    for _ in 0..100 {
        let z: Vec<f64> = (0..4).map(|_| 2.0 * src.next_normal()).collect();
        let mu_vec: Vec<f64> = (0..4).map(|_| src.next_normal().abs()).collect();
        let mu = MeanVector::new(mu_vec).unwrap();
        // random permutation via sorting random keys
        let mut perm: Vec<usize> = (0..4).collect();
        let keys: Vec<f64> = (0..4).map(|_| src.next_normal()).collect();
        perm.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]));
        let gz: Vec<f64> = perm.iter().map(|&i| z[i]).collect();
        let gmu = mu.permuted(&perm);
        let before = model.log_density(&z, &mu).unwrap();
        let after = model.log_density(&gz, &gmu).unwrap();
        assert!((before - after).abs() < 1e-12);
    }
}

#[test]
fn sample_moments_hit_target() {
    let n = 1_000_000usize;
    let sigma2 = 2.0;
    let rho = 0.5;
    let model = IntraclassModel::new(3, sigma2, rho).unwrap();
    let mu = MeanVector::new(vec![0.5, 0.0, 1.5]).unwrap();
    let mut sums = [0.0f64; 3];
    let mut prods = [[0.0f64; 3]; 3];
    model
        .for_each_draw(&mu, n, 424242, |z| {
            for i in 0..3 {
                sums[i] += z[i];
                for j in 0..3 {
                    prods[i][j] += z[i] * z[j];
                }
            }
        })
        .unwrap();
    let nf = n as f64;
    let se_mean = (sigma2 / nf).sqrt();
    for i in 0..3 {
        let mean = sums[i] / nf;
        assert!(
            (mean - mu.coords()[i]).abs() < 4.0 * se_mean,
            "mean[{i}] = {mean}"
        );
    }
    for i in 0..3 {
        for j in 0..3 {
            let target = if i == j { sigma2 } else { sigma2 * rho };
            let cov = prods[i][j] / nf - (sums[i] / nf) * (sums[j] / nf);
            let se_cov = ((sigma2 * sigma2 + target * target) / nf).sqrt();
            assert!(
                (cov - target).abs() < 4.0 * se_cov,
                "cov[{i}][{j}] = {cov}, target {target}"
            );
        }
    }
}

#[test]
fn independent_coordinates_when_rho_zero() {
    let n = 1_000_000usize;
    let model = IntraclassModel::new(2, 1.0, 0.0).unwrap();
    let mu = MeanVector::zeros(2);
    let mut cross = 0.0;
    let mut sums = [0.0f64; 2];
    model
        .for_each_draw(&mu, n, 7, |z| {
            cross += z[0] * z[1];
            sums[0] += z[0];
            sums[1] += z[1];
        })
        .unwrap();
    let nf = n as f64;
    let corr = cross / nf - (sums[0] / nf) * (sums[1] / nf);
    assert!(corr.abs() < 3.0 / nf.sqrt(), "corr = {corr}");
}

#[test]
fn correlation_recovered_at_rho_half() {
    let n = 1_000_000usize;
    let model = IntraclassModel::new(2, 1.0, 0.5).unwrap();
    let mu = MeanVector::zeros(2);
    let mut cross = 0.0;
    let mut sums = [0.0f64; 2];
    let mut sqs = [0.0f64; 2];
    model
        .for_each_draw(&mu, n, 8, |z| {
            cross += z[0] * z[1];
            for i in 0..2 {
                sums[i] += z[i];
                sqs[i] += z[i] * z[i];
            }
        })
        .unwrap();
    let nf = n as f64;
    let cov = cross / nf - (sums[0] / nf) * (sums[1] / nf);
    let v0 = sqs[0] / nf - (sums[0] / nf).powi(2);
    let v1 = sqs[1] / nf - (sums[1] / nf).powi(2);
    let corr = cov / (v0 * v1).sqrt();
    // SE of a correlation estimate is (1 - rho^2)/sqrt(n)
    let se = (1.0 - 0.25) / nf.sqrt();
    assert!((corr - 0.5).abs() < 3.0 * se, "corr = {corr}");
}

#[test]
fn conditional_mean_matches_binned_draws() {
    let model = IntraclassModel::new(2, 1.0, 0.5).unwrap();
    let mu = MeanVector::new(vec![2.0, 0.5]).unwrap();
    let t = 1.8;
    let cond = model.conditional_z1_given_sum(&mu, t).unwrap();
    let mut count = 0usize;
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    model
        .for_each_draw(&mu, 1_000_000, 99, |z| {
            if (z[0] + z[1] - t).abs() < 0.01 {
                count += 1;
                sum += z[0];
                sumsq += z[0] * z[0];
            }
        })
        .unwrap();
    assert!(count > 100, "window too empty: {count}");
    let mean = sum / count as f64;
    let var = sumsq / count as f64 - mean * mean;
    let se = (var / count as f64).sqrt();
    assert!(
        (mean - cond.mean).abs() < 3.0 * se,
        "binned mean {mean} vs conditional {} (se {se})",
        cond.mean
    );
    // the binned variance should be near the conditional variance as well
    assert!((var - cond.variance).abs() < 10.0 * se);
}

#[test]
fn psi_is_linear_in_delta() {
    // psi(alpha*d1 + (1-alpha)*d2) = alpha*psi(d1) + (1-alpha)*psi(d2)
    let k = 3;
    let d1 = DecisionMass::new(vec![
        (ActionVector::from_mask(0b101, k), 0.5),
        (ActionVector::from_mask(0b010, k), 0.5),
    ])
    .unwrap();
    let d2 = DecisionMass::new(vec![
        (ActionVector::from_mask(0b111, k), 0.25),
        (ActionVector::from_mask(0b000, k), 0.75),
    ])
    .unwrap();
    for alpha in [0.0, 0.25, 0.5, 0.9, 1.0] {
        let mut entries = Vec::new();
        for (a, w) in d1.entries() {
            entries.push((*a, alpha * w));
        }
        for (a, w) in d2.entries() {
            entries.push((*a, (1.0 - alpha) * w));
        }
        let entries: Vec<_> = entries.into_iter().filter(|(_, w)| *w > 0.0).collect();
        let mix = DecisionMass::new(entries).unwrap();
        let lhs = psi_from_delta(&mix);
        let p1 = psi_from_delta(&d1);
        let p2 = psi_from_delta(&d2);
        for i in 0..k {
            let rhs = alpha * p1[i] + (1.0 - alpha) * p2[i];
            assert!((lhs[i] - rhs).abs() < 1e-12);
            assert!((0.0..=1.0).contains(&lhs[i]));
        }
    }
}
