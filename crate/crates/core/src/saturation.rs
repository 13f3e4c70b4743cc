//! The eight qubit states with |<sigma_j>| = 1/sqrt(3) and prescribed signs,
//! and the partner-state construction that drives the commutator sum to its
//! most negative reachable value.

use num_complex::Complex64;

use crate::pauli::{cyclic, pauli_matrices};
use crate::state::QuantumState;
use crate::tol;
use crate::triple::ObservableTriple;
use crate::uncertainty::{commutator_expectations, inv_sqrt3, UncertaintyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Signs of (<sigma_1>, <sigma_2>, <sigma_3>) for one of the eight states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignPattern {
    signs: [Sign; 3],
}

impl SignPattern {
    pub fn new(signs: [Sign; 3]) -> Self {
        Self { signs }
    }

    pub fn signs(&self) -> [Sign; 3] {
        self.signs
    }

    /// All eight patterns, (+,+,+) first, in binary order with minus as 1.
    pub fn all() -> [SignPattern; 8] {
        let pick = |bit: usize| if bit == 0 { Sign::Plus } else { Sign::Minus };
        core::array::from_fn(|k| SignPattern::new([pick(k >> 2 & 1), pick(k >> 1 & 1), pick(k & 1)]))
    }
}

impl std::fmt::Display for SignPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for s in self.signs {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

/// The tabulated state for a sign pattern:
/// sqrt(1/2 + s3 sqrt(3)/6) |0> + w sqrt(1/2 - s3 sqrt(3)/6) |1>,
/// where the unit phase w = (s1 + i s2) / sqrt(2) realizes the first two signs.
pub fn appendix_state(pattern: SignPattern) -> QuantumState {
    let [s1, s2, s3] = pattern.signs();
    let bias = 3.0_f64.sqrt() / 6.0;
    let amp0 = (0.5 + s3.value() * bias).sqrt();
    let amp1 = (0.5 - s3.value() * bias).sqrt();
    let w = Complex64::new(s1.value(), s2.value()) / 2.0_f64.sqrt();
    QuantumState::pure(vec![Complex64::new(amp0, 0.0), w * amp1])
        .expect("construction is unit norm")
}

/// Result of choosing the partner state nu for a given (triple, mu).
#[derive(Debug, Clone)]
pub struct SaturationPartner {
    pub nu: QuantumState,
    pub pattern: SignPattern,
    /// sum_j <i[H_j, H_{j+1}]>_mu <sigma_{j+2}>_nu as realized by nu.
    pub achieved: f64,
    /// -(1/sqrt(3)) sum_j |<[H_j, H_{j+1}]>_mu|, the most negative value
    /// reachable over the eight patterns.
    pub target: f64,
}

/// Pick the pattern whose sign at slot j+2 opposes <i[H_j, H_{j+1}]>_mu.
/// Zero expectations (within 1e-12) default to Plus; the term contributes
/// nothing either way and determinism keeps reruns identical.
pub fn saturating_partner(
    t: &ObservableTriple,
    mu: &QuantumState,
) -> Result<SaturationPartner, UncertaintyError> {
    let comm = commutator_expectations(t, mu)?;
    // <i[A, B]> = Re(i <[A, B]>) = -Im <[A, B]>.
    let c: [f64; 3] = [-comm[0].im, -comm[1].im, -comm[2].im];

    let mut signs = [Sign::Plus; 3];
    for j in 0..3 {
        if c[j] > tol::SIGN_TIE {
            signs[cyclic(j, 2)] = Sign::Minus;
        }
    }
    let pattern = SignPattern::new(signs);
    let nu = appendix_state(pattern);

    let sigma = pauli_matrices();
    let mut achieved = 0.0;
    for j in 0..3 {
        let s_exp = nu
            .expectation_re(&sigma[cyclic(j, 2)])
            .expect("nu is a qubit state");
        achieved += c[j] * s_exp;
    }
    let target = -inv_sqrt3() * comm.iter().map(|z| z.norm()).sum::<f64>();

    Ok(SaturationPartner {
        nu,
        pattern,
        achieved,
        target,
    })
}
