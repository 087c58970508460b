//! Nelder-Mead simplex minimizer over R^n.
//!
//! Standard coefficients (reflection 1, expansion 2, contraction 0.5,
//! shrink 0.5). Convergence is on simplex diameter — the max pairwise
//! L-inf distance between vertices — which is what the QMLE layer pins
//! its tolerance to. Non-finite objective values are treated as +inf so
//! the search backs away from overflow regions instead of poisoning the
//! simplex.

pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
    pub converged: bool,
}

pub fn nelder_mead<F>(
    f: F,
    start: &[f64],
    initial_step: f64,
    tol_diameter: f64,
    max_iter: usize,
) -> NelderMeadResult
where
    F: Fn(&[f64]) -> f64,
{
    let n = start.len();
    let eval = |x: &[f64]| -> f64 {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(start.to_vec());
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += initial_step;
        simplex.push(p);
    }
    let mut scores: Vec<f64> = simplex.iter().map(|p| eval(p)).collect();

    let diameter = |simplex: &[Vec<f64>]| -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..simplex.len() {
            for j in (i + 1)..simplex.len() {
                let dist = simplex[i]
                    .iter()
                    .zip(&simplex[j])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                d = d.max(dist);
            }
        }
        d
    };

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        if diameter(&simplex) < tol_diameter {
            converged = true;
            break;
        }
        iterations += 1;

        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| scores[a].partial_cmp(&scores[b]).unwrap());
        let best = order[0];
        let second_worst = order[n - 1];
        let worst = order[n];

        let mut centroid = vec![0.0; n];
        for &i in order.iter().take(n) {
            for d in 0..n {
                centroid[d] += simplex[i][d];
            }
        }
        for c in centroid.iter_mut() {
            *c /= n as f64;
        }

        let lerp = |from: &[f64], towards: &[f64], t: f64| -> Vec<f64> {
            from.iter()
                .zip(towards)
                .map(|(a, b)| a + t * (b - a))
                .collect()
        };

        // reflect the worst vertex through the centroid
        let reflected = lerp(&centroid, &simplex[worst], -1.0);
        let f_reflected = eval(&reflected);

        if f_reflected < scores[best] {
            let expanded = lerp(&centroid, &simplex[worst], -2.0);
            let f_expanded = eval(&expanded);
            if f_expanded < f_reflected {
                simplex[worst] = expanded;
                scores[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                scores[worst] = f_reflected;
            }
            continue;
        }
        if f_reflected < scores[second_worst] {
            simplex[worst] = reflected;
            scores[worst] = f_reflected;
            continue;
        }

        let contracted = if f_reflected < scores[worst] {
            lerp(&centroid, &reflected, 0.5) // outside
        } else {
            lerp(&centroid, &simplex[worst], 0.5) // inside
        };
        let f_contracted = eval(&contracted);
        if f_contracted < scores[worst].min(f_reflected) {
            simplex[worst] = contracted;
            scores[worst] = f_contracted;
            continue;
        }

        // shrink everything towards the best vertex
        let anchor = simplex[best].clone();
        for i in 0..=n {
            if i == best {
                continue;
            }
            simplex[i] = lerp(&anchor, &simplex[i], 0.5);
            scores[i] = eval(&simplex[i]);
        }
    }

    let best = (0..=n)
        .min_by(|&a, &b| scores[a].partial_cmp(&scores[b]).unwrap())
        .unwrap();
    NelderMeadResult {
        x: simplex[best].clone(),
        fx: scores[best],
        iterations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_quadratic_bowl() {
        let f = |x: &[f64]| (x[0] - 2.0).powi(2) + (x[1] + 1.0).powi(2);
        let r = nelder_mead(f, &[0.0, 0.0], 0.5, 1e-10, 2000);
        assert!(r.converged);
        assert!((r.x[0] - 2.0).abs() < 1e-6);
        assert!((r.x[1] + 1.0).abs() < 1e-6);
    }

    #[test]
    fn minimizes_rosenbrock() {
        let f = |x: &[f64]| {
            100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2)
        };
        let r = nelder_mead(f, &[-1.2, 1.0], 0.5, 1e-10, 5000);
        assert!((r.x[0] - 1.0).abs() < 1e-4, "x = {:?}", r.x);
        assert!((r.x[1] - 1.0).abs() < 1e-4);
    }

    #[test]
    fn never_degrades_start_value() {
        let f = |x: &[f64]| x[0].powi(2) + (x[1] - 3.0).powi(2);
        let starts = [[5.0, 5.0], [-2.0, 0.0], [0.1, 0.1]];
        for s in starts {
            let r = nelder_mead(f, &s, 0.25, 1e-8, 50);
            assert!(r.fx <= f(&s));
        }
    }

    #[test]
    fn survives_infinite_regions() {
        // objective blows up left of x = -1
        let f = |x: &[f64]| {
            if x[0] < -1.0 {
                f64::NAN
            } else {
                (x[0] - 1.0).powi(2)
            }
        };
        let r = nelder_mead(f, &[-0.9, 0.0], 0.5, 1e-10, 2000);
        assert!((r.x[0] - 1.0).abs() < 1e-6);
    }
}
