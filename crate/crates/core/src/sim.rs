//! Dense statevector simulation of the QAOA circuit.
//!
//! Qubit `i` stands for vertex `i` and is bit `i` of the basis index. The
//! cost unitary `exp(-i gamma H_C)` is diagonal with eigenvalue equal to the
//! cut value of each basis labeling, so it is applied as a phase per basis
//! state using a precomputed [`CostDiagonal`]. The mixer applies
//! `exp(-i beta X)` to every qubit.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;
use crate::scalar::Scalar;

pub const DEFAULT_QUBIT_CAP: usize = 24;

/// Environment variable that overrides [`DEFAULT_QUBIT_CAP`].
pub const QUBIT_CAP_ENV: &str = "QMAXCUT_QUBIT_CAP";

/// Qubit cap from `QMAXCUT_QUBIT_CAP`, falling back to the default when the
/// variable is unset. A value that is not a positive integer is an error.
pub fn qubit_cap_from_env() -> Result<usize> {
    match std::env::var(QUBIT_CAP_ENV) {
        Err(_) => Ok(DEFAULT_QUBIT_CAP),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(cap) if cap >= 1 => Ok(cap),
            _ => Err(Error::invalid(format!(
                "{QUBIT_CAP_ENV}={v:?} is not a positive integer"
            ))),
        },
    }
}

fn check_qubits(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("state needs at least one qubit"));
    }
    let cap = cap.min(crate::graph::MAX_PACKED_VERTICES);
    if n > cap {
        return Err(Error::ResourceLimit {
            what: "qubit count",
            requested: n,
            cap,
        });
    }
    Ok(())
}

/// Cut value of every basis state of a graph: the diagonal of `H_C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostDiagonal {
    n_qubits: usize,
    m: usize,
    values: Vec<u32>,
}

impl CostDiagonal {
    pub fn new(g: &Graph, qubit_cap: usize) -> Result<Self> {
        check_qubits(g.n(), qubit_cap)?;
        let dim = 1usize << g.n();
        let mut values = vec![0u32; dim];
        // cut(b) differs from cut(b without its top bit) only on edges at that vertex
        let masks = g.neighbor_masks()?;
        for b in 1..dim {
            let top = usize::BITS - 1 - b.leading_zeros();
            let prev = b ^ (1 << top);
            let mask = masks[top as usize] as usize;
            let differing = (mask & !prev).count_ones();
            let same = (mask & prev).count_ones();
            values[b] = values[prev] + differing - same;
        }
        Ok(CostDiagonal {
            n_qubits: g.n(),
            m: g.m(),
            values,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    n_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Scalar> StateVector<T> {
    /// `|+>^n`: every amplitude `2^(-n/2)`.
    pub fn uniform(n: usize, qubit_cap: usize) -> Result<Self> {
        check_qubits(n, qubit_cap)?;
        let dim = 1usize << n;
        let a = T::one() / T::of_usize(dim).sqrt();
        Ok(StateVector {
            n_qubits: n,
            amps: vec![Complex::new(a, T::zero()); dim],
        })
    }

    /// Computational basis state `|index>`.
    pub fn basis(n: usize, index: usize, qubit_cap: usize) -> Result<Self> {
        check_qubits(n, qubit_cap)?;
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::invalid(format!(
                "basis index {index} out of range for {n} qubits"
            )));
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(StateVector { n_qubits: n, amps })
    }

    /// Wraps raw amplitudes. The length must be a power of two (at least 2)
    /// and the norm must be 1 within `1e-6` relative; amplitudes are then
    /// renormalized exactly.
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        let dim = amps.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::invalid(format!(
                "amplitude count {dim} is not a power of two >= 2"
            )));
        }
        let mut state = StateVector {
            n_qubits: dim.trailing_zeros() as usize,
            amps,
        };
        let norm = state.norm_sqr();
        if !norm.is_finite() || (norm - T::one()).abs() > T::of(1e-6) {
            return Err(Error::invalid(format!("state norm^2 {norm} is not 1")));
        }
        let scale = T::one() / norm.sqrt();
        for a in &mut state.amps {
            *a = a.scale(scale);
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// Multiplies amplitude `b` by `exp(-i gamma C_b)`.
    pub fn apply_cost_layer(&mut self, diag: &CostDiagonal, gamma: T) -> Result<()> {
        self.check_diag(diag)?;
        // cut values are integers in 0..=m, so one phase per distinct value
        let phases: Vec<Complex<T>> = (0..=diag.m)
            .map(|c| Complex::from_polar(T::one(), -gamma * T::of_usize(c)))
            .collect();
        for (a, &c) in self.amps.iter_mut().zip(&diag.values) {
            *a = *a * phases[c as usize];
        }
        Ok(())
    }

    /// Applies `exp(-i beta X_q)` to every qubit `q`.
    pub fn apply_mixer_layer(&mut self, beta: T) {
        let (s, c) = beta.sin_cos();
        let minus_i_sin = Complex::new(T::zero(), -s);
        for q in 0..self.n_qubits {
            let stride = 1usize << q;
            for block in self.amps.chunks_exact_mut(stride << 1) {
                let (lo, hi) = block.split_at_mut(stride);
                for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x0, x1) = (*a0, *a1);
                    *a0 = x0.scale(c) + minus_i_sin * x1;
                    *a1 = minus_i_sin * x0 + x1.scale(c);
                }
            }
        }
    }

    /// `sum_b |a_b|^2 C_b`.
    pub fn expectation(&self, diag: &CostDiagonal) -> Result<T> {
        self.check_diag(diag)?;
        Ok(self
            .amps
            .iter()
            .zip(&diag.values)
            .fold(T::zero(), |acc, (a, &c)| {
                acc + a.norm_sqr() * T::of_usize(c as usize)
            }))
    }

    /// Draws `shots` basis indices from `|a_b|^2` by inverse-CDF lookup on
    /// seeded uniform draws.
    pub fn sample(&self, shots: usize, seed: u64) -> Result<Vec<usize>> {
        if shots == 0 {
            return Err(Error::invalid("shots must be at least 1"));
        }
        let mut cdf = Vec::with_capacity(self.amps.len());
        let mut acc = 0.0f64;
        for a in &self.amps {
            acc += a.norm_sqr().as_f64();
            cdf.push(acc);
        }
        let total = acc;
        let mut rng = rng::seeded(seed);
        let last = cdf.len() - 1;
        Ok((0..shots)
            .map(|_| {
                let u = rng::unit_f64(&mut rng) * total;
                // first index whose cumulative mass exceeds u
                cdf.partition_point(|&x| x <= u).min(last)
            })
            .collect())
    }

    fn check_diag(&self, diag: &CostDiagonal) -> Result<()> {
        if diag.n_qubits != self.n_qubits {
            return Err(Error::invalid(format!(
                "state has {} qubits, graph has {} vertices",
                self.n_qubits, diag.n_qubits
            )));
        }
        Ok(())
    }
}

/// Depth and angles of the ansatz: layer `l` applies the cost unitary with
/// `gammas[l]` and then the mixer with `betas[l]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QaoaParams<T> {
    gammas: Vec<T>,
    betas: Vec<T>,
}

impl<T: Scalar> QaoaParams<T> {
    pub fn new(gammas: Vec<T>, betas: Vec<T>) -> Result<Self> {
        if gammas.is_empty() || gammas.len() != betas.len() {
            return Err(Error::invalid(format!(
                "need p >= 1 gammas and betas of equal length, got {} and {}",
                gammas.len(),
                betas.len()
            )));
        }
        if gammas.iter().chain(&betas).any(|x| !x.is_finite()) {
            return Err(Error::invalid("angles must be finite"));
        }
        Ok(QaoaParams { gammas, betas })
    }

    pub fn zeros(depth: usize) -> Result<Self> {
        QaoaParams::new(vec![T::zero(); depth], vec![T::zero(); depth])
    }

    pub fn depth(&self) -> usize {
        self.gammas.len()
    }

    pub fn gammas(&self) -> &[T] {
        &self.gammas
    }

    pub fn betas(&self) -> &[T] {
        &self.betas
    }

    /// `[gamma_1..gamma_p, beta_1..beta_p]`.
    pub fn to_flat(&self) -> Vec<T> {
        self.gammas.iter().chain(&self.betas).copied().collect()
    }

    pub fn from_flat(flat: &[T]) -> Result<Self> {
        if flat.len() % 2 != 0 {
            return Err(Error::invalid("flat parameter vector must have even length"));
        }
        let (g, b) = flat.split_at(flat.len() / 2);
        QaoaParams::new(g.to_vec(), b.to_vec())
    }

    /// Same circuit with `extra` identity layers (zero angles) appended.
    pub fn padded(&self, extra: usize) -> Self {
        let mut out = self.clone();
        out.gammas.extend(std::iter::repeat(T::zero()).take(extra));
        out.betas.extend(std::iter::repeat(T::zero()).take(extra));
        out
    }
}

pub fn init_uniform<T: Scalar>(n: usize) -> Result<StateVector<T>> {
    StateVector::uniform(n, DEFAULT_QUBIT_CAP)
}

pub fn apply_cost_layer<T: Scalar>(state: &mut StateVector<T>, g: &Graph, gamma: T) -> Result<()> {
    let diag = CostDiagonal::new(g, state.n_qubits.max(DEFAULT_QUBIT_CAP))?;
    state.apply_cost_layer(&diag, gamma)
}

pub fn apply_mixer_layer<T: Scalar>(state: &mut StateVector<T>, beta: T) {
    state.apply_mixer_layer(beta)
}

pub fn apply_qaoa_circuit<T: Scalar>(g: &Graph, params: &QaoaParams<T>) -> Result<StateVector<T>> {
    apply_qaoa_circuit_capped(g, params, DEFAULT_QUBIT_CAP)
}

pub fn apply_qaoa_circuit_capped<T: Scalar>(
    g: &Graph,
    params: &QaoaParams<T>,
    qubit_cap: usize,
) -> Result<StateVector<T>> {
    let diag = CostDiagonal::new(g, qubit_cap)?;
    prepare_state(&diag, params)
}

/// Runs the ansatz from the uniform state against a prepared diagonal.
pub fn prepare_state<T: Scalar>(diag: &CostDiagonal, params: &QaoaParams<T>) -> Result<StateVector<T>> {
    let mut state = StateVector::uniform(diag.n_qubits, diag.n_qubits)?;
    for (&gamma, &beta) in params.gammas.iter().zip(&params.betas) {
        state.apply_cost_layer(diag, gamma)?;
        state.apply_mixer_layer(beta);
    }
    Ok(state)
}

pub fn expectation_cut<T: Scalar>(state: &StateVector<T>, g: &Graph) -> Result<T> {
    if state.n_qubits != g.n() {
        return Err(Error::invalid(format!(
            "state has {} qubits, graph has {} vertices",
            state.n_qubits,
            g.n()
        )));
    }
    let diag = CostDiagonal::new(g, state.n_qubits)?;
    state.expectation(&diag)
}

pub fn sample_bitstrings<T: Scalar>(state: &StateVector<T>, shots: usize, seed: u64) -> Result<Vec<usize>> {
    state.sample(shots, seed)
}
