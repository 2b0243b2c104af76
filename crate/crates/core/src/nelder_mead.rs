//! Bounded Nelder-Mead simplex maximization.
//!
//! The objective is smooth but multimodal with max-of-eigenvalues kinks, so
//! a derivative-free simplex needs no special kink handling. Box bounds are
//! enforced by clamping, except on periodic dimensions which wrap.

/// Per-dimension search box. `wrap[i]` marks a periodic coordinate that is
/// reduced into `[lo, hi)` instead of clamped.
#[derive(Debug, Clone)]
pub(crate) struct SearchBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub wrap: Vec<bool>,
}

impl SearchBox {
    pub fn dims(&self) -> usize {
        self.lo.len()
    }

    fn project(&self, x: &mut [f64]) {
        for i in 0..x.len() {
            if self.wrap[i] {
                let span = self.hi[i] - self.lo[i];
                x[i] = self.lo[i] + (x[i] - self.lo[i]).rem_euclid(span);
            } else {
                x[i] = x[i].clamp(self.lo[i], self.hi[i]);
            }
        }
    }

    pub fn sample_uniform<R: rand::Rng>(&self, rng: &mut R) -> Vec<f64> {
        (0..self.dims())
            .map(|i| rng.random_range(self.lo[i]..self.hi[i]))
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct NmOptions {
    pub max_evals: usize,
    pub ftol: f64,
    pub xtol: f64,
}

#[derive(Debug, Clone)]
pub(crate) struct NmOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;
/// Window used for the value-stability half of the convergence flag.
const STABLE_WINDOW: usize = 50;

/// Maximizes `f` over the box starting from `x0`.
pub(crate) fn maximize<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    bounds: &SearchBox,
    opts: &NmOptions,
) -> NmOutcome {
    let n = bounds.dims();
    assert_eq!(x0.len(), n);
    let mut evals = 0usize;
    // Running best value at each evaluation, for the stability window.
    let mut best_trace: Vec<f64> = Vec::new();
    let mut best_so_far = f64::NEG_INFINITY;
    let mut eval = |x: &[f64], evals: &mut usize, best_trace: &mut Vec<f64>| -> f64 {
        let v = f(x);
        *evals += 1;
        if v > best_so_far {
            best_so_far = v;
        }
        best_trace.push(best_so_far);
        // minimize internally
        -v
    };

    let mut start = x0.to_vec();
    bounds.project(&mut start);

    // Initial simplex: start plus one step along each coordinate.
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(start.clone());
    for i in 0..n {
        let mut v = start.clone();
        let step = 0.1 * (bounds.hi[i] - bounds.lo[i]);
        v[i] = if !bounds.wrap[i] && v[i] + step > bounds.hi[i] {
            v[i] - step
        } else {
            v[i] + step
        };
        bounds.project(&mut v);
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex
        .iter()
        .map(|v| eval(v, &mut evals, &mut best_trace))
        .collect();

    while evals < opts.max_evals {
        // Order: values[order[0]] is the current minimum of -f.
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite objective"));
        let best = order[0];
        let worst = order[n];
        let second_worst = order[n - 1];

        let diameter = simplex
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&simplex[best])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        let spread = values[worst] - values[best];
        if diameter < opts.xtol && spread < opts.ftol {
            break;
        }

        // Centroid of all but the worst vertex.
        let mut centroid = vec![0.0; n];
        for (k, v) in simplex.iter().enumerate() {
            if k == worst {
                continue;
            }
            for i in 0..n {
                centroid[i] += v[i] / n as f64;
            }
        }
        let worst_point = simplex[worst].clone();
        let moved = |coeff: f64| -> Vec<f64> {
            let mut x: Vec<f64> = (0..n)
                .map(|i| centroid[i] + coeff * (centroid[i] - worst_point[i]))
                .collect();
            bounds.project(&mut x);
            x
        };

        let reflected = moved(REFLECT);
        let f_reflected = eval(&reflected, &mut evals, &mut best_trace);
        if f_reflected < values[best] {
            let expanded = moved(EXPAND);
            let f_expanded = eval(&expanded, &mut evals, &mut best_trace);
            if f_expanded < f_reflected {
                simplex[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
        } else if f_reflected < values[second_worst] {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
        } else {
            let accepted = if f_reflected < values[worst] {
                let contracted = moved(CONTRACT);
                let f_contracted = eval(&contracted, &mut evals, &mut best_trace);
                (f_contracted <= f_reflected).then_some((contracted, f_contracted))
            } else {
                let contracted = moved(-CONTRACT);
                let f_contracted = eval(&contracted, &mut evals, &mut best_trace);
                (f_contracted < values[worst]).then_some((contracted, f_contracted))
            };
            match accepted {
                Some((point, f_point)) => {
                    simplex[worst] = point;
                    values[worst] = f_point;
                }
                None => {
                    // Shrink toward the best vertex.
                    let anchor = simplex[best].clone();
                    for k in 0..=n {
                        if k == best {
                            continue;
                        }
                        let mut v = simplex[k].clone();
                        for i in 0..n {
                            v[i] = anchor[i] + SHRINK * (v[i] - anchor[i]);
                        }
                        bounds.project(&mut v);
                        values[k] = eval(&v, &mut evals, &mut best_trace);
                        simplex[k] = v;
                        if evals >= opts.max_evals {
                            break;
                        }
                    }
                }
            }
        }
    }

    let (best_idx, _) = values
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.partial_cmp(b).expect("finite objective"))
        .expect("nonempty simplex");

    let diameter = simplex
        .iter()
        .map(|v| {
            v.iter()
                .zip(&simplex[best_idx])
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    let window = best_trace.len().min(STABLE_WINDOW);
    let tail = &best_trace[best_trace.len() - window..];
    let stable = tail
        .iter()
        .fold(f64::NEG_INFINITY, |a, &b| a.max(b))
        - tail.iter().fold(f64::INFINITY, |a, &b| a.min(b))
        <= opts.ftol;

    NmOutcome {
        x: simplex[best_idx].clone(),
        value: -values[best_idx],
        evals,
        converged: diameter < opts.xtol && stable,
    }
}
