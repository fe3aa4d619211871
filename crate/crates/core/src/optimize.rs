//! Budgeted Nelder-Mead maximizer.
//!
//! Standard coefficients (reflection 1, expansion 2, contraction 1/2,
//! shrink 1/2). The objective is called at most `max_evals` times and the
//! best point ever evaluated is returned, so the result is never worse than
//! the starting point.

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMead<T> {
    /// Offset of each initial simplex vertex from the start, per coordinate.
    pub initial_step: T,
    /// Converged when the spread of simplex values drops below this...
    pub f_tol: T,
    /// ...and every vertex lies within this distance of the best one.
    pub x_tol: T,
}

impl<T: Scalar> Default for NelderMead<T> {
    fn default() -> Self {
        NelderMead {
            initial_step: T::of(0.25),
            f_tol: T::of(1e-10),
            x_tol: T::of(1e-8),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Optimum<T> {
    pub x: Vec<T>,
    pub value: T,
    pub evaluations: usize,
}

struct Counted<F, T> {
    f: F,
    used: usize,
    limit: usize,
    best: Option<(Vec<T>, T)>,
}

impl<T: Scalar, F: FnMut(&[T]) -> T> Counted<F, T> {
    fn eval(&mut self, x: &[T]) -> Option<T> {
        if self.used >= self.limit {
            return None;
        }
        self.used += 1;
        let v = (self.f)(x);
        // NaN never becomes the best point
        let better = match &self.best {
            None => !v.is_nan(),
            Some((_, b)) => v > *b,
        };
        if better {
            self.best = Some((x.to_vec(), v));
        }
        Some(v)
    }
}

impl<T: Scalar> NelderMead<T> {
    /// Maximizes `f` from `x0` with at most `max_evals` evaluations
    /// (at least one is always spent on `x0`).
    pub fn maximize<F>(&self, f: F, x0: &[T], max_evals: usize) -> Optimum<T>
    where
        F: FnMut(&[T]) -> T,
    {
        let mut obj = Counted {
            f,
            used: 0,
            limit: max_evals.max(1),
            best: None,
        };
        self.run(&mut obj, x0);
        let evaluations = obj.used;
        let (x, value) = obj.best.unwrap_or_else(|| (x0.to_vec(), T::nan()));
        Optimum {
            x,
            value,
            evaluations,
        }
    }

    // Works on -f internally so the simplex bookkeeping reads as minimization.
    fn run<F: FnMut(&[T]) -> T>(&self, obj: &mut Counted<F, T>, x0: &[T]) -> Option<()> {
        let dim = x0.len();
        let neg = |v: T| if v.is_nan() { T::infinity() } else { -v };

        let mut simplex: Vec<(Vec<T>, T)> = Vec::with_capacity(dim + 1);
        simplex.push((x0.to_vec(), neg(obj.eval(x0)?)));
        if dim == 0 {
            return Some(());
        }
        for i in 0..dim {
            let mut x = x0.to_vec();
            x[i] = x[i] + self.initial_step;
            let v = neg(obj.eval(&x)?);
            simplex.push((x, v));
        }

        let half = T::of(0.5);
        let two = T::of(2.0);
        loop {
            simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
            if self.converged(&simplex) {
                return Some(());
            }
            let worst = simplex[dim].clone();
            let centroid: Vec<T> = (0..dim)
                .map(|j| {
                    simplex[..dim].iter().fold(T::zero(), |acc, p| acc + p.0[j]) / T::of_usize(dim)
                })
                .collect();
            let along = |t: T| -> Vec<T> {
                centroid
                    .iter()
                    .zip(&worst.0)
                    .map(|(&c, &w)| c + t * (c - w))
                    .collect()
            };

            let xr = along(T::one());
            let fr = neg(obj.eval(&xr)?);
            if fr < simplex[0].1 {
                let xe = along(two);
                let fe = neg(obj.eval(&xe)?);
                simplex[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < simplex[dim - 1].1 {
                simplex[dim] = (xr, fr);
                continue;
            }
            // contraction: outside if the reflection beat the worst, else inside
            let (xc, fc) = if fr < worst.1 {
                let xc = along(half);
                let fc = neg(obj.eval(&xc)?);
                (xc, fc)
            } else {
                let xc = along(-half);
                let fc = neg(obj.eval(&xc)?);
                (xc, fc)
            };
            if fc < worst.1.min(fr) {
                simplex[dim] = (xc, fc);
                continue;
            }
            let best = simplex[0].0.clone();
            for p in simplex.iter_mut().skip(1) {
                for (x, &b) in p.0.iter_mut().zip(&best) {
                    *x = b + half * (*x - b);
                }
                p.1 = neg(obj.eval(&p.0)?);
            }
        }
    }

    fn converged(&self, simplex: &[(Vec<T>, T)]) -> bool {
        let best = &simplex[0];
        let spread = simplex[simplex.len() - 1].1 - best.1;
        if !(spread.abs() <= self.f_tol) {
            return false;
        }
        simplex.iter().skip(1).all(|(x, _)| {
            x.iter()
                .zip(&best.0)
                .all(|(&a, &b)| (a - b).abs() <= self.x_tol)
        })
    }
}
