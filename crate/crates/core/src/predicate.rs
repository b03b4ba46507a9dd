//! Boolean relations over `{-1,+1}^k`.
//!
//! A tuple is encoded as an integer code whose binary expansion reads the
//! tuple left to right with `+1 -> 1` and `-1 -> 0`, so `(+1,-1,-1)` has
//! code `0b100`.

use crate::error::{invalid, Result};

pub const MAX_ARITY: usize = 16;

/// Entry of a tuple: `-1` or `+1`.
pub type Spin = i8;

/// Code of a tuple, first coordinate most significant.
pub fn code_of(tuple: &[Spin]) -> u32 {
    tuple
        .iter()
        .fold(0u32, |acc, &x| (acc << 1) | u32::from(x > 0))
}

/// Inverse of [`code_of`].
pub fn tuple_of(code: u32, k: usize) -> Vec<Spin> {
    (0..k)
        .map(|i| if (code >> (k - 1 - i)) & 1 == 1 { 1 } else { -1 })
        .collect()
}

/// Number of `+1` entries of a code.
pub fn weight_of(code: u32) -> usize {
    code.count_ones() as usize
}

/// Formats a tuple as a string over `+-`.
pub fn tuple_string(tuple: &[Spin]) -> String {
    tuple.iter().map(|&x| if x > 0 { '+' } else { '-' }).collect()
}

/// A set of tuples of fixed arity, stored as a bitset over all `2^k` codes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Predicate {
    arity: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Predicate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tuples: Vec<String> = self.codes().map(|c| tuple_string(&tuple_of(c, self.arity))).collect();
        write!(f, "Predicate[{}]{{{}}}", self.arity, tuples.join(" "))
    }
}

impl Predicate {
    /// The empty predicate of arity `k`.
    pub fn empty(k: usize) -> Result<Self> {
        if k == 0 || k > MAX_ARITY {
            return invalid(format!("arity {k} outside 1..={MAX_ARITY}"));
        }
        let words = ((1usize << k) + 63) / 64;
        Ok(Self { arity: k, bits: vec![0; words] })
    }

    /// The full cube `{-1,+1}^k`.
    pub fn full(k: usize) -> Result<Self> {
        let mut p = Self::empty(k)?;
        for c in 0..p.cube_size() {
            p.insert_code(c);
        }
        Ok(p)
    }

    pub fn from_codes(k: usize, codes: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut p = Self::empty(k)?;
        for c in codes {
            if c >= p.cube_size() {
                return invalid(format!("code {c} out of range for arity {k}"));
            }
            p.insert_code(c);
        }
        Ok(p)
    }

    pub fn from_tuples<T: AsRef<[Spin]>>(k: usize, tuples: impl IntoIterator<Item = T>) -> Result<Self> {
        let mut p = Self::empty(k)?;
        for t in tuples {
            let t = t.as_ref();
            if t.len() != k {
                return invalid(format!("tuple of length {} in arity-{k} predicate", t.len()));
            }
            if t.iter().any(|&x| x != 1 && x != -1) {
                return invalid("tuple entries must be -1 or +1");
            }
            p.insert_code(code_of(t));
        }
        Ok(p)
    }

    /// Keeps exactly the tuples accepted by `keep`.
    pub fn from_fn(k: usize, mut keep: impl FnMut(&[Spin]) -> bool) -> Result<Self> {
        let mut p = Self::empty(k)?;
        for c in 0..p.cube_size() {
            if keep(&tuple_of(c, k)) {
                p.insert_code(c);
            }
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn cube_size(&self) -> u32 {
        1u32 << self.arity
    }

    fn insert_code(&mut self, c: u32) {
        self.bits[(c / 64) as usize] |= 1u64 << (c % 64);
    }

    pub fn contains_code(&self, c: u32) -> bool {
        (self.bits[(c / 64) as usize] >> (c % 64)) & 1 == 1
    }

    pub fn contains(&self, tuple: &[Spin]) -> bool {
        tuple.len() == self.arity && self.contains_code(code_of(tuple))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.cube_size() as usize
    }

    pub fn is_subset(&self, other: &Predicate) -> bool {
        self.arity == other.arity && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Member codes in increasing order.
    pub fn codes(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.cube_size()).filter(move |&c| self.contains_code(c))
    }

    pub fn tuples(&self) -> Vec<Vec<Spin>> {
        self.codes().map(|c| tuple_of(c, self.arity)).collect()
    }

    /// Codes of the cube not in the predicate.
    pub fn missing_codes(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.cube_size()).filter(move |&c| !self.contains_code(c))
    }

    pub fn complement(&self) -> Predicate {
        Predicate::from_codes(self.arity, self.missing_codes()).expect("same arity")
    }

    /// `{x ⊙ s : x ∈ self}`, flipping the coordinates where `s` is `-1`.
    pub fn flip(&self, s: &[Spin]) -> Predicate {
        let mask = !code_of(s) & (self.cube_size() - 1);
        Predicate::from_codes(self.arity, self.codes().map(|c| c ^ mask)).expect("same arity")
    }

    /// True when membership depends only on the number of `+1` entries.
    pub fn is_symmetric(&self) -> bool {
        let mut seen: [Option<bool>; MAX_ARITY + 1] = [None; MAX_ARITY + 1];
        for c in 0..self.cube_size() {
            let w = weight_of(c);
            let m = self.contains_code(c);
            match seen[w] {
                None => seen[w] = Some(m),
                Some(prev) if prev != m => return false,
                _ => {}
            }
        }
        true
    }

    /// The weight set `S` with `self = Ham_k S`, if the predicate is symmetric.
    pub fn ham_weights(&self) -> Option<Vec<usize>> {
        if !self.is_symmetric() {
            return None;
        }
        let mut ws: Vec<usize> = self.codes().map(weight_of).collect();
        ws.sort_unstable();
        ws.dedup();
        Some(ws)
    }

    /// Coordinates on which every tuple agrees, with their common value.
    pub fn fixed_coordinates(&self) -> Vec<(usize, Spin)> {
        let tuples = self.tuples();
        let Some(first) = tuples.first() else { return Vec::new() };
        (0..self.arity)
            .filter(|&i| tuples.iter().all(|t| t[i] == first[i]))
            .map(|i| (i, first[i]))
            .collect()
    }

    /// Restriction to tuples agreeing with `pins`, projected onto the
    /// remaining coordinates. `None` when every coordinate is pinned.
    pub fn restrict(&self, pins: &[(usize, Spin)]) -> Option<Predicate> {
        let free: Vec<usize> = (0..self.arity).filter(|i| !pins.iter().any(|p| p.0 == *i)).collect();
        if free.is_empty() {
            return None;
        }
        let kept = self
            .tuples()
            .into_iter()
            .filter(|t| pins.iter().all(|&(i, v)| t[i] == v))
            .map(|t| free.iter().map(|&i| t[i]).collect::<Vec<_>>());
        Some(Predicate::from_tuples(free.len(), kept).expect("valid projection"))
    }
}

/// `Ham_k S`: tuples whose number of `+1` entries lies in `weights`.
pub fn make_ham(k: usize, weights: &[usize]) -> Result<Predicate> {
    if k == 0 || k > MAX_ARITY {
        return invalid(format!("arity {k} outside 1..={MAX_ARITY}"));
    }
    if let Some(w) = weights.iter().find(|&&w| w > k) {
        return invalid(format!("weight {w} exceeds arity {k}"));
    }
    Predicate::from_codes(k, (0..1u32 << k).filter(|&c| weights.contains(&weight_of(c))))
}

/// `NAE_k`.
pub fn nae(k: usize) -> Predicate {
    make_ham(k, &(1..k).collect::<Vec<_>>()).expect("valid arity")
}

/// `k`-SAT: everything but the all-minus tuple.
pub fn k_sat(k: usize) -> Predicate {
    make_ham(k, &(1..=k).collect::<Vec<_>>()).expect("valid arity")
}

/// `1-in-k`.
pub fn one_in(k: usize) -> Predicate {
    make_ham(k, &[1]).expect("valid arity")
}

/// Three-variable parity: tuples whose entries sum to `-1` or `3`.
pub fn three_lin() -> Predicate {
    Predicate::from_fn(3, |t| {
        let s: i32 = t.iter().map(|&x| i32::from(x)).sum();
        s == -1 || s == 3
    })
    .expect("arity 3")
}

/// A strong/weak predicate pair with `P ⊆ Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PredicatePair {
    strong: Predicate,
    weak: Predicate,
}

impl PredicatePair {
    pub fn new(strong: Predicate, weak: Predicate) -> Result<Self> {
        if strong.arity() != weak.arity() {
            return invalid(format!("strong arity {} differs from weak arity {}", strong.arity(), weak.arity()));
        }
        if !strong.is_subset(&weak) {
            return invalid("strong predicate is not contained in the weak predicate");
        }
        Ok(Self { strong, weak })
    }

    /// A CSP pair with `P = Q`.
    pub fn csp(p: Predicate) -> Self {
        Self { strong: p.clone(), weak: p }
    }

    pub fn strong(&self) -> &Predicate {
        &self.strong
    }

    pub fn weak(&self) -> &Predicate {
        &self.weak
    }

    pub fn arity(&self) -> usize {
        self.strong.arity
    }
}

/// A finite list of predicate pairs. Negated literals are always allowed;
/// constants are allowed when `idempotent` is set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Template {
    pairs: Vec<PredicatePair>,
    idempotent: bool,
}

impl Template {
    pub fn new(pairs: Vec<PredicatePair>, idempotent: bool) -> Result<Self> {
        if pairs.is_empty() {
            return invalid("template has no pairs");
        }
        if let Some(i) = pairs.iter().position(|p| p.strong().is_empty()) {
            return invalid(format!("pair {} has an empty strong predicate", i + 1));
        }
        Ok(Self { pairs, idempotent })
    }

    pub fn single(pair: PredicatePair) -> Self {
        Self::new(vec![pair], false).expect("non-empty strong predicate required")
    }

    pub fn pairs(&self) -> &[PredicatePair] {
        &self.pairs
    }

    pub fn pair(&self, i: usize) -> &PredicatePair {
        &self.pairs[i]
    }

    pub fn idempotent(&self) -> bool {
        self.idempotent
    }

    pub fn max_arity(&self) -> usize {
        self.pairs.iter().map(PredicatePair::arity).max().unwrap_or(0)
    }
}
