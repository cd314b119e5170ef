//! (2,d) quantum random access codes.
//!
//! Alice encodes a message `x = (x₁, x₂)` of two base-`d` digits into one
//! qudit; Bob is asked for one digit and measures `M₁` or `M₂`. Everything
//! here is evaluated exactly over all `d²` messages.

use alloc::vec::Vec;

use crate::mub::MubPair;
use crate::quantum::{
    born_probability, hermitian_eig, operator_norm, partial_trace, DensityMatrix, Effect, Matrix,
    Povm, PureState, QuantumState, Subsystem,
};
use crate::{Error, Result, MAX_DIM, TOL};

/// Two base-`d` digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Message {
    digits: [usize; 2],
    alphabet: usize,
}

impl Message {
    pub fn new(x1: usize, x2: usize, alphabet: usize) -> Result<Self> {
        for digit in [x1, x2] {
            if digit >= alphabet {
                return Err(Error::DigitOutOfRange { digit, alphabet });
            }
        }
        Ok(Self {
            digits: [x1, x2],
            alphabet,
        })
    }

    /// Inverse of [`Message::index`].
    pub fn from_index(index: usize, alphabet: usize) -> Result<Self> {
        Self::new(index / alphabet, index % alphabet, alphabet)
    }

    /// All `d²` messages in index order.
    pub fn all(alphabet: usize) -> impl Iterator<Item = Message> {
        (0..alphabet * alphabet).map(move |i| Message {
            digits: [i / alphabet, i % alphabet],
            alphabet,
        })
    }

    pub fn x1(&self) -> usize {
        self.digits[0]
    }

    pub fn x2(&self) -> usize {
        self.digits[1]
    }

    pub fn digit(&self, k: usize) -> usize {
        self.digits[k]
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    /// `x₁ d + x₂`.
    pub fn index(&self) -> usize {
        self.digits[0] * self.alphabet + self.digits[1]
    }
}

impl core::fmt::Display for Message {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}{}", self.digits[0], self.digits[1])
    }
}

/// Bob's decoding measurements `{M₁, M₂}`, each with `d` outcomes on `H_d`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementPair {
    m1: Povm,
    m2: Povm,
}

impl MeasurementPair {
    pub fn new(m1: Povm, m2: Povm) -> Result<Self> {
        let d = m1.dim();
        if m2.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: m2.dim(),
            });
        }
        for m in [&m1, &m2] {
            if m.outcomes() != d {
                return Err(Error::OutcomeCount {
                    expected: d,
                    found: m.outcomes(),
                });
            }
        }
        Ok(Self { m1, m2 })
    }

    pub fn from_mub(pair: &MubPair) -> Self {
        Self {
            m1: Povm::from_basis(pair.first()),
            m2: Povm::from_basis(pair.second()),
        }
    }

    pub fn m1(&self) -> &Povm {
        &self.m1
    }

    pub fn m2(&self) -> &Povm {
        &self.m2
    }

    pub fn measurement(&self, k: usize) -> &Povm {
        match k {
            0 => &self.m1,
            1 => &self.m2,
            _ => panic!("a (2,d) code has two measurements, got index {k}"),
        }
    }

    pub fn dim(&self) -> usize {
        self.m1.dim()
    }

    /// `M₁(x₁) + M₂(x₂)`.
    pub fn message_operator(&self, x: &Message) -> Matrix {
        self.m1.effect(x.x1()).matrix() + self.m2.effect(x.x2()).matrix()
    }

    fn check_message(&self, x: &Message) -> Result<()> {
        if x.alphabet() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.alphabet(),
            });
        }
        Ok(())
    }
}

/// One state per message, stored in [`Message::index`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodingMap<S = PureState> {
    alphabet: usize,
    states: Vec<S>,
}

impl<S: QuantumState> EncodingMap<S> {
    pub fn from_states(alphabet: usize, states: Vec<S>) -> Result<Self> {
        if states.len() != alphabet * alphabet {
            return Err(Error::IncompleteEncoding {
                expected: alphabet * alphabet,
                found: states.len(),
            });
        }
        Ok(Self { alphabet, states })
    }

    /// Every message mapped to the same state.
    pub fn constant(alphabet: usize, state: S) -> Self
    where
        S: Clone,
    {
        Self {
            alphabet,
            states: alloc::vec![state; alphabet * alphabet],
        }
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn get(&self, x: &Message) -> &S {
        &self.states[x.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Message, &S)> {
        Message::all(self.alphabet).zip(&self.states)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Passes every state through the depolarizing channel of visibility `v`.
    pub fn depolarized(&self, v: f64) -> Result<EncodingMap<DensityMatrix>> {
        let states = self
            .states
            .iter()
            .map(|s| depolarize(&s.to_density(), v))
            .collect::<Result<_>>()?;
        Ok(EncodingMap {
            alphabet: self.alphabet,
            states,
        })
    }
}

/// Excess of a success probability over the classical bound, floored at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdvantageValue {
    pub value: f64,
    pub classical_bound_used: f64,
    pub raw_excess: f64,
}

impl AdvantageValue {
    pub fn from_excess(success: f64, classical_bound: f64) -> Self {
        let raw_excess = success - classical_bound;
        Self {
            value: raw_excess.max(0.0),
            classical_bound_used: classical_bound,
            raw_excess,
        }
    }
}

/// Proportional-fairness figure `ln Q(S₁S₂) + ln Q(S₁) + ln Q(S₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AllocationValue {
    /// `None` when any term is zero.
    pub phi: Option<f64>,
    /// Log arguments in the order global, first subsystem, second subsystem.
    pub terms: [f64; 3],
}

/// Top eigenvector of `M₁(x₁) + M₂(x₂)`.
pub fn optimal_encoding(pair: &MeasurementPair, x: &Message) -> Result<PureState> {
    pair.check_message(x)?;
    Ok(hermitian_eig(&pair.message_operator(x))?
        .top_eigenvector()
        .clone())
}

pub fn encoding_table(pair: &MeasurementPair) -> Result<EncodingMap> {
    let states = Message::all(pair.dim())
        .map(|x| optimal_encoding(pair, &x))
        .collect::<Result<_>>()?;
    EncodingMap::from_states(pair.dim(), states)
}

/// `1/(2d²) Σ_x Σ_k Tr[ℰ(x) M_k(x_k)]`, summed in message order.
pub fn average_success_probability<S: QuantumState>(
    enc: &EncodingMap<S>,
    pair: &MeasurementPair,
) -> Result<f64> {
    let d = pair.dim();
    if enc.alphabet() != d {
        return Err(Error::IncompleteEncoding {
            expected: d * d,
            found: enc.len(),
        });
    }
    let mut total = 0.0;
    for (x, state) in enc.iter() {
        for k in 0..2 {
            total += born_probability(state, pair.measurement(k).effect(x.digit(k)))?;
        }
    }
    Ok(total / (2 * d * d) as f64)
}

/// `1/(2d²) Σ_x ‖M₁(x₁) + M₂(x₂)‖`.
pub fn max_success_probability(pair: &MeasurementPair) -> Result<f64> {
    let d = pair.dim();
    let mut total = 0.0;
    for x in Message::all(d) {
        total += operator_norm(&pair.message_operator(&x))?;
    }
    Ok(total / (2 * d * d) as f64)
}

/// Best classical (2,d) random access code: `½(1 + 1/d)`.
///
/// Panics for `d < 2`.
pub fn classical_bound(d: usize) -> f64 {
    assert!(d >= 2, "alphabet must have at least two letters, got {d}");
    0.5 * (1.0 + 1.0 / d as f64)
}

/// Best quantum (2,d) random access code: `½(1 + 1/√d)`.
///
/// Panics for `d < 2`.
pub fn quantum_bound(d: usize) -> f64 {
    assert!(d >= 2, "alphabet must have at least two letters, got {d}");
    0.5 * (1.0 + 1.0 / libm::sqrt(d as f64))
}

/// Incompatibility monotone `𝒜(𝐌)` of a decoding pair.
///
/// The excess is counted over both decoding targets, i.e. on the summed
/// success `Σ_k` rather than the average: `2 (P_QRAC(𝐌) − P_RAC)`, floored at
/// zero. A mutually unbiased pair reaches `(√d − 1)/d`. Single measured
/// success probabilities go through [`empirical_advantage`] instead, which
/// does not double.
pub fn advantage(pair: &MeasurementPair) -> Result<AdvantageValue> {
    let bound = classical_bound(pair.dim());
    let raw_excess = 2.0 * (max_success_probability(pair)? - bound);
    Ok(AdvantageValue {
        value: raw_excess.max(0.0),
        classical_bound_used: bound,
        raw_excess,
    })
}

/// Advantage of a measured success probability `p` over `bound`.
pub fn empirical_advantage(p: f64, bound: f64) -> Result<AdvantageValue> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p,
        });
    }
    Ok(AdvantageValue::from_excess(p, bound))
}

/// Two-outcome measurement of one bit of a four-outcome result.
///
/// Bit 0 is the most significant: it separates `{0, 1}` from `{2, 3}`.
/// Bit 1 separates `{0, 2}` from `{1, 3}`.
pub fn coarse_grain(povm: &Povm, bit: u8) -> Result<Povm> {
    if povm.outcomes() != 4 {
        return Err(Error::OutcomeCount {
            expected: 4,
            found: povm.outcomes(),
        });
    }
    let groups: [[usize; 2]; 2] = match bit {
        0 => [[0, 1], [2, 3]],
        1 => [[0, 2], [1, 3]],
        _ => {
            return Err(Error::InvalidParameter {
                name: "bit",
                value: bit as f64,
            })
        }
    };
    let effects = groups
        .iter()
        .map(|g| {
            Effect::from_matrix_unchecked(povm.effect(g[0]).matrix() + povm.effect(g[1]).matrix())
        })
        .collect();
    Ok(Povm::from_effects_unchecked(effects))
}

/// Mean probability of decoding `decode(x)` with `povm` over the messages in `subset`.
pub fn subensemble_success<S, F>(
    enc: &EncodingMap<S>,
    povm: &Povm,
    subset: &[Message],
    decode: F,
) -> Result<f64>
where
    S: QuantumState,
    F: Fn(&Message) -> usize,
{
    if subset.is_empty() {
        return Err(Error::InvalidParameter {
            name: "subset",
            value: 0.0,
        });
    }
    let mut total = 0.0;
    for x in subset {
        let outcome = decode(x);
        if outcome >= povm.outcomes() {
            return Err(Error::DigitOutOfRange {
                digit: outcome,
                alphabet: povm.outcomes(),
            });
        }
        total += born_probability(enc.get(x), povm.effect(outcome))?;
    }
    Ok(total / subset.len() as f64)
}

/// Restricts a POVM on `H_{d₁} ⊗ H_{d₂}` to one factor.
///
/// Outcomes are indexed big-endian (`I = a d₂ + b`). The kept outcome
/// marginalizes over the other digit and the discarded factor is contracted
/// with the maximally mixed state:
/// `M[keep](a) = Tr_other[Σ_b M(a, b)] / d_other`.
pub fn reduce_povm(povm: &Povm, dims: (usize, usize), keep: Subsystem) -> Result<Povm> {
    let (d1, d2) = dims;
    if d1 < 2 || d2 < 2 || d1 * d2 != povm.dim() {
        return Err(Error::BadFactorization {
            dim: povm.dim(),
            d1,
            d2,
        });
    }
    if povm.outcomes() != d1 * d2 {
        return Err(Error::OutcomeCount {
            expected: d1 * d2,
            found: povm.outcomes(),
        });
    }
    let (kept, other) = match keep {
        Subsystem::First => (d1, d2),
        Subsystem::Second => (d2, d1),
    };
    let effects = (0..kept)
        .map(|a| {
            let mut marginal = Matrix::zeros(d1 * d2);
            for b in 0..other {
                let outcome = match keep {
                    Subsystem::First => a * d2 + b,
                    Subsystem::Second => b * d2 + a,
                };
                marginal = &marginal + povm.effect(outcome).matrix();
            }
            let reduced = partial_trace(&marginal, dims, keep)?.scale(1.0 / other as f64);
            Effect::new(reduced)
        })
        .collect::<Result<_>>()?;
    Povm::new(effects)
}

pub fn reduce_pair(
    pair: &MeasurementPair,
    dims: (usize, usize),
    keep: Subsystem,
) -> Result<MeasurementPair> {
    MeasurementPair::new(
        reduce_povm(pair.m1(), dims, keep)?,
        reduce_povm(pair.m2(), dims, keep)?,
    )
}

/// Whether every `M₁(i)` commutes with every `M₂(j)`.
pub fn commuting(pair: &MeasurementPair) -> bool {
    pair.m1().effects().iter().all(|a| {
        pair.m2()
            .effects()
            .iter()
            .all(|b| a.matrix().commutator(b.matrix()).frobenius_norm() < TOL.commutator)
    })
}

/// Joint measurement `G(x, y) = M₁(x) M₂(y)` for a commuting pair, indexed
/// `x · n₂ + y`. Its marginals reproduce the pair; `None` if the pair does not commute.
pub fn parent_measurement(pair: &MeasurementPair) -> Option<Povm> {
    if !commuting(pair) {
        return None;
    }
    let mut effects = Vec::with_capacity(pair.m1().outcomes() * pair.m2().outcomes());
    for a in pair.m1().effects() {
        for b in pair.m2().effects() {
            let product = a.matrix() * b.matrix();
            // Commuting PSD operators have a PSD product; symmetrize away rounding.
            let hermitian = &product.scale(0.5) + &product.adjoint().scale(0.5);
            effects.push(Effect::from_matrix_unchecked(hermitian));
        }
    }
    Some(Povm::from_effects_unchecked(effects))
}

/// Compatibility of two projective measurements, which holds exactly when they commute.
pub fn pvm_pair_compatible(pair: &MeasurementPair) -> Result<bool> {
    for m in [pair.m1(), pair.m2()] {
        let defect = m.projective_defect();
        if defect > TOL.projective {
            return Err(Error::NotProjective(defect));
        }
    }
    Ok(commuting(pair))
}

pub fn allocation_figure(
    global: &AdvantageValue,
    s1: &AdvantageValue,
    s2: &AdvantageValue,
) -> AllocationValue {
    let terms = [global.value, s1.value, s2.value];
    let phi = if terms.iter().all(|&t| t > 0.0) {
        Some(terms.iter().map(|&t| libm::log(t)).sum())
    } else {
        None
    };
    AllocationValue { phi, terms }
}

/// Allocation figure of a bipartite pair from its global and reduced advantages.
pub fn allocation_of_pair(pair: &MeasurementPair, dims: (usize, usize)) -> Result<AllocationValue> {
    let global = advantage(pair)?;
    let s1 = advantage(&reduce_pair(pair, dims, Subsystem::First)?)?;
    let s2 = advantage(&reduce_pair(pair, dims, Subsystem::Second)?)?;
    Ok(allocation_figure(&global, &s1, &s2))
}

/// `v ρ + (1 − v) I/d`.
pub fn depolarize(rho: &DensityMatrix, v: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::InvalidParameter {
            name: "visibility",
            value: v,
        });
    }
    let d = rho.dim();
    debug_assert!(d <= MAX_DIM);
    let mixed = Matrix::identity(d).scale((1.0 - v) / d as f64);
    Ok(DensityMatrix::from_matrix_unchecked(
        &rho.matrix().scale(v) + &mixed,
    ))
}
