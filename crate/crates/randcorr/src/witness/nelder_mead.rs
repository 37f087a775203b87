//! Minimal derivative-free simplex minimizer.

/// Minimizes `f` starting from `x0` with initial simplex edge `step`.
/// Standard reflection/expansion/contraction/shrink coefficients; stops when
/// the simplex function values collapse below `ftol` or after `max_iter`
/// iterations. Returns the best vertex and its value.
pub fn nelder_mead(
    f: impl Fn(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    max_iter: usize,
    ftol: f64,
) -> (Vec<f64>, f64) {
    let d = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] += step;
        let fx = f(&x);
        simplex.push((x, fx));
    }

    let centroid = |s: &[(Vec<f64>, f64)]| -> Vec<f64> {
        let mut c = vec![0.0; d];
        for (x, _) in &s[..d] {
            for (ci, xi) in c.iter_mut().zip(x) {
                *ci += xi / d as f64;
            }
        }
        c
    };
    let blend = |c: &[f64], w: &[f64], coeff: f64| -> Vec<f64> {
        c.iter()
            .zip(w)
            .map(|(ci, wi)| ci + coeff * (ci - wi))
            .collect()
    };

    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        if simplex[d].1 - simplex[0].1 < ftol {
            break;
        }
        let c = centroid(&simplex);
        let worst = simplex[d].0.clone();

        let xr = blend(&c, &worst, 1.0);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = blend(&c, &worst, 2.0);
            let fe = f(&xe);
            simplex[d] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[d - 1].1 {
            simplex[d] = (xr, fr);
        } else {
            let xc = blend(&c, &worst, -0.5);
            let fc = f(&xc);
            if fc < simplex[d].1 {
                simplex[d] = (xc, fc);
            } else {
                // shrink toward the best vertex
                let best = simplex[0].0.clone();
                for v in simplex.iter_mut().skip(1) {
                    let x: Vec<f64> = best
                        .iter()
                        .zip(&v.0)
                        .map(|(b, x)| b + 0.5 * (x - b))
                        .collect();
                    let fx = f(&x);
                    *v = (x, fx);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    simplex.swap_remove(0).into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn quadratic_bowl() {
        let (x, v) = nelder_mead(
            |x| (x[0] - 1.0).powi(2) + 2.0 * (x[1] + 0.5).powi(2),
            &[3.0, 3.0],
            0.5,
            500,
            1e-14,
        );
        assert_relative_eq!(x[0], 1.0, epsilon = 1e-5);
        assert_relative_eq!(x[1], -0.5, epsilon = 1e-5);
        assert!(v < 1e-9);
    }

    #[test]
    fn rosenbrock_2d() {
        let (x, _) = nelder_mead(
            |x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2),
            &[-1.2, 1.0],
            0.5,
            2000,
            1e-16,
        );
        assert_relative_eq!(x[0], 1.0, epsilon = 1e-4);
        assert_relative_eq!(x[1], 1.0, epsilon = 1e-4);
    }
}
