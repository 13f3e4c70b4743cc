//! Minimal derivative-free simplex minimizer for the floor search.

pub(crate) struct NelderMead {
    pub max_iters: usize,
    /// Absolute spread of simplex values that counts as converged.
    pub tol: f64,
}

pub(crate) struct OptimOutcome {
    pub point: Vec<f64>,
    pub value: f64,
    pub converged: bool,
}

impl NelderMead {
    pub fn minimize(&self, f: impl Fn(&[f64]) -> f64, x0: &[f64], step: f64) -> OptimOutcome {
        let n = x0.len();
        if n == 0 {
            return OptimOutcome {
                point: Vec::new(),
                value: f(x0),
                converged: true,
            };
        }

        let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        simplex.push(x0.to_vec());
        for i in 0..n {
            let mut p = x0.to_vec();
            p[i] += step;
            simplex.push(p);
        }
        let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();

        let mut converged = false;
        for _ in 0..self.max_iters {
            // Order best..worst.
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite objective"));
            let reordered: Vec<Vec<f64>> = order.iter().map(|&i| simplex[i].clone()).collect();
            let revalues: Vec<f64> = order.iter().map(|&i| values[i]).collect();
            simplex = reordered;
            values = revalues;

            if values[n] - values[0] <= self.tol {
                converged = true;
                break;
            }

            let centroid: Vec<f64> = (0..n)
                .map(|d| simplex[..n].iter().map(|p| p[d]).sum::<f64>() / n as f64)
                .collect();

            let blend = |from: &[f64], towards: &[f64], factor: f64| -> Vec<f64> {
                from.iter()
                    .zip(towards)
                    .map(|(c, w)| c + factor * (c - w))
                    .collect()
            };

            let reflected = blend(&centroid, &simplex[n], 1.0);
            let f_reflected = f(&reflected);

            if f_reflected < values[0] {
                let expanded = blend(&centroid, &simplex[n], 2.0);
                let f_expanded = f(&expanded);
                if f_expanded < f_reflected {
                    simplex[n] = expanded;
                    values[n] = f_expanded;
                } else {
                    simplex[n] = reflected;
                    values[n] = f_reflected;
                }
            } else if f_reflected < values[n - 1] {
                simplex[n] = reflected;
                values[n] = f_reflected;
            } else {
                let contracted = blend(&centroid, &simplex[n], -0.5);
                let f_contracted = f(&contracted);
                if f_contracted < values[n] {
                    simplex[n] = contracted;
                    values[n] = f_contracted;
                } else {
                    // Shrink towards the best vertex.
                    for i in 1..=n {
                        let best = simplex[0].clone();
                        for (x, b) in simplex[i].iter_mut().zip(&best) {
                            *x = b + 0.5 * (*x - b);
                        }
                        values[i] = f(&simplex[i]);
                    }
                }
            }
        }

        let mut best = 0;
        for i in 1..=n {
            if values[i] < values[best] {
                best = i;
            }
        }
        OptimOutcome {
            point: simplex[best].clone(),
            value: values[best],
            converged,
        }
    }
}
