//! Term-list quantum states.
//!
//! A state over `n` qubits is kept in canonical form: exactly `2^n`
//! coefficients, one per basis vector, ordered by the bit-vector read with
//! qubit 0 as the most significant bit. In the exact backend a state also
//! carries `scale_sq`; the physical amplitude of a term is
//! `coeff / sqrt(scale_sq)`. This lets normalization be postponed when
//! `sqrt(norm^2)` falls outside `Q[sqrt 2]`.

use crate::backend::Backend;
use crate::error::{Error, Result};
use crate::scalar::{CScalar, Real};

pub const DEFAULT_MAX_QUBITS: usize = 16;

/// One `(coefficient, basis vector)` pair. `bits[i]` is qubit `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term<R> {
    pub coeff: CScalar<R>,
    pub bits: Vec<bool>,
}

impl<R: Real> Term<R> {
    pub fn new(coeff: CScalar<R>, bits: Vec<bool>) -> Self {
        Term { coeff, bits }
    }
}

/// Parses a bitstring such as `"011"` (qubit 0 leftmost).
pub fn bits_from_str(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct QState<R> {
    nqubits: usize,
    amps: Vec<CScalar<R>>,
    scale_sq: R,
}

impl<R: Real> QState<R> {
    /// Canonicalizes an arbitrary term list: duplicates are summed, missing
    /// basis vectors get explicit zeros, and `scale_sq` starts at 1.
    pub fn sort_and_merge<I>(terms: I, nqubits: usize) -> Result<Self>
    where
        I: IntoIterator<Item = Term<R>>,
    {
        Self::sort_and_merge_with_limit(terms, nqubits, DEFAULT_MAX_QUBITS)
    }

    pub fn sort_and_merge_with_limit<I>(terms: I, nqubits: usize, limit: usize) -> Result<Self>
    where
        I: IntoIterator<Item = Term<R>>,
    {
        check_width(nqubits, limit)?;
        let mut amps = vec![CScalar::zero(); 1 << nqubits];
        for term in terms {
            if term.bits.len() != nqubits {
                return Err(Error::Format(format!(
                    "term has {} bits, expected {nqubits}",
                    term.bits.len()
                )));
            }
            let idx = index_of(&term.bits);
            let slot = std::mem::replace(&mut amps[idx], CScalar::zero());
            amps[idx] = slot + term.coeff;
        }
        Self::from_amplitudes(nqubits, amps)
    }

    /// Builds a state directly from its `2^n` canonical coefficients.
    pub fn from_amplitudes(nqubits: usize, amps: Vec<CScalar<R>>) -> Result<Self> {
        check_width(nqubits, DEFAULT_MAX_QUBITS.max(nqubits))?;
        if amps.len() != 1 << nqubits {
            return Err(Error::Format(format!(
                "{} coefficients for {nqubits} qubits",
                amps.len()
            )));
        }
        if amps.iter().all(CScalar::is_zero) {
            return Err(Error::ZeroState);
        }
        Ok(QState {
            nqubits,
            amps,
            scale_sq: R::one(),
        })
    }

    /// `|0...0>` over `n` qubits.
    pub fn zero_qstate(n: usize) -> Result<Self> {
        check_width(n, DEFAULT_MAX_QUBITS)?;
        let mut amps = vec![CScalar::zero(); 1 << n];
        amps[0] = CScalar::one();
        Ok(QState {
            nqubits: n,
            amps,
            scale_sq: R::one(),
        })
    }

    /// `alpha|0> + beta|1>`.
    pub fn make_qubit(alpha: CScalar<R>, beta: CScalar<R>) -> Result<Self> {
        Self::from_amplitudes(1, vec![alpha, beta])
    }

    pub fn nqubits(&self) -> usize {
        self.nqubits
    }

    /// Canonical coefficients, indexed by basis vector.
    pub fn amplitudes(&self) -> &[CScalar<R>] {
        &self.amps
    }

    pub fn coeff(&self, bits: &[bool]) -> Option<&CScalar<R>> {
        (bits.len() == self.nqubits).then(|| &self.amps[index_of(bits)])
    }

    pub fn scale_sq(&self) -> &R {
        &self.scale_sq
    }

    pub fn basis_bits(&self, index: usize) -> Vec<bool> {
        (0..self.nqubits)
            .map(|q| index & (1 << (self.nqubits - 1 - q)) != 0)
            .collect()
    }

    /// The canonical term list, zero terms included.
    pub fn terms(&self) -> Vec<Term<R>> {
        self.amps
            .iter()
            .enumerate()
            .map(|(i, c)| Term::new(c.clone(), self.basis_bits(i)))
            .collect()
    }

    /// Sum of squared coefficient norms. Ignores `scale_sq`.
    pub fn norm_sq(&self) -> R {
        self.amps.iter().fold(R::zero(), |acc, c| acc + c.norm_sq())
    }

    /// `scale_sq` matches the coefficients, so physical amplitudes have unit norm.
    pub fn is_unit(&self) -> bool {
        self.scale_sq == self.norm_sq()
    }

    pub fn is_fully_normalized(&self) -> bool {
        self.scale_sq == R::one() && self.is_unit()
    }

    /// Rescales to unit norm. When the backend cannot take the square root
    /// the coefficients are kept and the squared norm moves into `scale_sq`.
    pub fn normalize<B: Backend<Real = R>>(&self, backend: &B) -> Result<Self> {
        let norm = self.norm_sq();
        if norm.is_zero() {
            return Err(Error::ZeroState);
        }
        match backend.sqrt(&norm)? {
            Some(root) => {
                let amps = self
                    .amps
                    .iter()
                    .map(|c| c.div_real(&root))
                    .collect::<Result<Vec<_>>>()?;
                Ok(QState {
                    nqubits: self.nqubits,
                    amps,
                    scale_sq: R::one(),
                })
            }
            None => Ok(QState {
                nqubits: self.nqubits,
                amps: self.amps.clone(),
                scale_sq: norm,
            }),
        }
    }

    /// `self (x) other`; `self` occupies the low qubit indices.
    pub fn tensor_product(&self, other: &QState<R>) -> Result<Self> {
        let nqubits = self.nqubits + other.nqubits;
        check_width(nqubits, DEFAULT_MAX_QUBITS)?;
        let mut amps = Vec::with_capacity(1 << nqubits);
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a.clone() * b.clone());
            }
        }
        Ok(QState {
            nqubits,
            amps,
            scale_sq: self.scale_sq.clone() * other.scale_sq.clone(),
        })
    }

    /// Value of qubit `n` when every nonzero term agrees on it.
    pub fn deterministic_qubit(&self, n: usize) -> Result<bool> {
        let mask = self.qubit_mask(n)?;
        let mut seen: Option<bool> = None;
        for (i, c) in self.amps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = i & mask != 0;
            match seen {
                Some(prev) if prev != v => return Err(Error::NotDeterministic(n)),
                _ => seen = Some(v),
            }
        }
        seen.ok_or(Error::ZeroState)
    }

    /// Extracts qubit `n` as a standalone normalized 1-qubit state.
    ///
    /// The amplitudes form a matrix `M[x][v]` with `x` the configuration of
    /// the other qubits and `v` the value of qubit `n`; the qubit factors out
    /// iff `M` has rank one. The result takes the phase of the first nonzero
    /// row.
    pub fn narrow_to_qubit<B: Backend<Real = R>>(&self, n: usize, backend: &B) -> Result<Self> {
        let mask = self.qubit_mask(n)?;
        let rows: Vec<(&CScalar<R>, &CScalar<R>)> = (0..self.amps.len())
            .filter(|i| i & mask == 0)
            .map(|i| (&self.amps[i], &self.amps[i | mask]))
            .collect();
        let &(a0, a1) = rows
            .iter()
            .find(|(c0, c1)| !c0.is_zero() || !c1.is_zero())
            .ok_or(Error::ZeroState)?;
        // Every row must be proportional to the anchor row.
        for &(c0, c1) in &rows {
            if c0.clone() * a1.clone() != c1.clone() * a0.clone() {
                return Err(Error::Entangled(n));
            }
        }
        let row_norm = a0.norm_sq() + a1.norm_sq();
        let root = backend.sqrt(&row_norm)?.ok_or_else(|| {
            Error::NotRepresentable(format!("sqrt({row_norm}) while narrowing qubit {n}"))
        })?;
        QState::make_qubit(a0.div_real(&root)?, a1.div_real(&root)?)
    }

    /// Coefficient-wise equality of two fully normalized states.
    pub fn exact_eq(&self, other: &QState<R>) -> Result<bool> {
        let one = R::one();
        if self.scale_sq != one || other.scale_sq != one {
            return Err(Error::NotRepresentable(
                "comparison of states with a deferred normalization".into(),
            ));
        }
        Ok(self.nqubits == other.nqubits && self.amps == other.amps)
    }

    pub(crate) fn qubit_mask(&self, n: usize) -> Result<usize> {
        if n >= self.nqubits {
            return Err(Error::QubitOutOfRange {
                index: n,
                nqubits: self.nqubits,
            });
        }
        Ok(1 << (self.nqubits - 1 - n))
    }

    /// Same qubit count and scale, new coefficients. Callers guarantee the
    /// coefficients are not all zero.
    pub(crate) fn with_amplitudes(&self, amps: Vec<CScalar<R>>) -> Self {
        debug_assert_eq!(amps.len(), self.amps.len());
        QState {
            nqubits: self.nqubits,
            amps,
            scale_sq: self.scale_sq.clone(),
        }
    }

    /// Converts every scalar, e.g. exact literals into the approximate backend.
    pub fn map_scalars<S: Real>(&self, f: impl Fn(&R) -> S) -> QState<S> {
        QState {
            nqubits: self.nqubits,
            amps: self.amps.iter().map(|c| c.map(&f)).collect(),
            scale_sq: f(&self.scale_sq),
        }
    }
}

fn check_width(nqubits: usize, limit: usize) -> Result<()> {
    if nqubits == 0 {
        return Err(Error::Format("a state needs at least one qubit".into()));
    }
    if nqubits > limit {
        return Err(Error::TooManyQubits {
            requested: nqubits,
            limit,
        });
    }
    Ok(())
}

fn index_of(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}
