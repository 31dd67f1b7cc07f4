//! Streams, prefixes, budgeted prefix transformers and their composition.
//!
//! A point of Baire space is a [`Stream`]: a total, deterministic map from
//! indices to naturals. A continuous function is a [`PrefixTransformer`]:
//! a monotone map from finite input prefixes (plus a fuel bound) to finite
//! output prefixes. Evaluation never blocks; missing information surfaces
//! as [`BudgetExhausted`].

pub mod limits;
pub mod pairing;

use pairing::{cantor, cantor_unpair};
use std::fmt;
use std::sync::{Arc, Mutex};
use thiserror::Error;

/// Stream symbols are naturals without a size bound: the nested pairing
/// codes used by hyperspace names overflow any machine integer.
pub type Sym = num_bigint::BigUint;

/// Convenience constructor for small symbols.
pub fn sym(n: u64) -> Sym {
    Sym::from(n)
}

/// A finite word over the naturals, ordered by extension.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Prefix(pub Vec<Sym>);

impl Prefix {
    pub fn new() -> Self {
        Prefix(Vec::new())
    }

    pub fn from_u64s(items: &[u64]) -> Self {
        Prefix(items.iter().map(|&x| sym(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn at(&self, i: usize) -> Option<&Sym> {
        self.0.get(i)
    }

    /// Extension order: `self ⊑ other` iff `self` is an initial segment.
    pub fn is_prefix_of(&self, other: &Prefix) -> bool {
        self.0.len() <= other.0.len() && self.0[..] == other.0[..self.0.len()]
    }

    pub fn truncated(&self, len: usize) -> Prefix {
        Prefix(self.0[..self.0.len().min(len)].to_vec())
    }

    /// Symbols as `u64`s, failing on oversized entries.
    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.0.iter().map(|s| u64::try_from(s).ok()).collect()
    }
}

impl fmt::Display for Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", words.join(" "))
    }
}

type StreamFn = dyn Fn(u64) -> Sym + Send + Sync;
type ModulusFn = dyn Fn(u64) -> u64 + Send + Sync;

/// A point of Baire space produced on demand.
///
/// Deterministic: the same index always yields the same symbol. The
/// optional convergence modulus is test-only metadata consumed by
/// verifiers and oracle realizers; transformers never see it.
#[derive(Clone)]
pub struct Stream {
    f: Arc<StreamFn>,
    modulus: Option<Arc<ModulusFn>>,
}

impl Stream {
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(u64) -> Sym + Send + Sync + 'static,
    {
        Stream {
            f: Arc::new(f),
            modulus: None,
        }
    }

    pub fn constant(v: u64) -> Self {
        let v = sym(v);
        Stream::from_fn(move |_| v.clone())
    }

    pub fn constant_sym(v: Sym) -> Self {
        Stream::from_fn(move |_| v.clone())
    }

    /// Finite prefix followed by a repeating cycle.
    pub fn from_prefix_cycle(prefix: Vec<Sym>, cycle: Vec<Sym>) -> Self {
        assert!(!cycle.is_empty(), "cycle must be non-empty");
        Stream::from_fn(move |i| {
            let i = i as usize;
            if i < prefix.len() {
                prefix[i].clone()
            } else {
                cycle[(i - prefix.len()) % cycle.len()].clone()
            }
        })
    }

    /// Finite prefix padded with zeros.
    pub fn from_prefix_zeros(prefix: Vec<Sym>) -> Self {
        Stream::from_prefix_cycle(prefix, vec![Sym::default()])
    }

    /// Attach a convergence modulus annotation (test-only metadata).
    pub fn with_modulus<M>(mut self, m: M) -> Self
    where
        M: Fn(u64) -> u64 + Send + Sync + 'static,
    {
        self.modulus = Some(Arc::new(m));
        self
    }

    pub fn modulus_at(&self, j: u64) -> Option<u64> {
        self.modulus.as_ref().map(|m| m(j))
    }

    pub fn at(&self, i: u64) -> Sym {
        (self.f)(i)
    }

    pub fn prefix(&self, len: usize) -> Prefix {
        Prefix((0..len as u64).map(|i| self.at(i)).collect())
    }

    /// Memoize symbol lookups (for streams that are expensive to sample).
    pub fn memoized(self) -> Self {
        let cache: Mutex<Vec<Option<Sym>>> = Mutex::new(Vec::new());
        let inner = self.f.clone();
        Stream {
            f: Arc::new(move |i| {
                let idx = i as usize;
                {
                    let cache = cache.lock().expect("stream cache poisoned");
                    if let Some(Some(v)) = cache.get(idx) {
                        return v.clone();
                    }
                }
                let v = inner(i);
                let mut cache = cache.lock().expect("stream cache poisoned");
                if cache.len() <= idx {
                    cache.resize(idx + 1, None);
                }
                cache[idx] = Some(v.clone());
                v
            }),
            modulus: self.modulus,
        }
    }

    /// Standard pairing: `<p,q>(2n) = p(n)` and `<p,q>(2n+1) = q(n)`.
    pub fn pair(p: Stream, q: Stream) -> Stream {
        Stream::from_fn(move |i| if i % 2 == 0 { p.at(i / 2) } else { q.at(i / 2) })
    }

    /// Inverse of [`Stream::pair`].
    pub fn unpair(self) -> (Stream, Stream) {
        let p = self.clone();
        let q = self;
        (
            Stream::from_fn(move |n| p.at(2 * n)),
            Stream::from_fn(move |n| q.at(2 * n + 1)),
        )
    }

    /// Countable tupling: `tuple(f)(cantor(i, j)) = f(i)(j)`.
    pub fn tuple<F>(family: F) -> Stream
    where
        F: Fn(u64) -> Stream + Send + Sync + 'static,
    {
        Stream::from_fn(move |n| {
            let (i, j) = cantor_unpair(n);
            family(i).at(j)
        })
    }

    /// Component extraction, inverse to [`Stream::tuple`].
    pub fn component(&self, i: u64) -> Stream {
        let s = self.clone();
        Stream::from_fn(move |j| s.at(cantor(i, j)))
    }
}

/// Fuel for one evaluation: how much of the input may be consulted and
/// how many enumeration steps a transformer may spend.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_input: u64,
    pub max_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_input: 1 << 10,
            max_steps: 1 << 14,
        }
    }
}

impl Budget {
    pub fn new(max_input: u64, max_steps: u64) -> Self {
        Budget {
            max_input,
            max_steps,
        }
    }

    pub fn doubled(self) -> Self {
        Budget {
            max_input: self.max_input * 2,
            max_steps: self.max_steps * 2,
        }
    }
}

/// Signals that the evaluation ran out of fuel before producing the
/// requested output length. Carries the symbols that were derivable; it
/// means "need more fuel", never wrongness.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("budget exhausted after {} of {wanted} output symbols", partial.len())]
pub struct BudgetExhausted {
    pub partial: Prefix,
    pub wanted: usize,
}

type TransformFn = dyn Fn(&Prefix, u64) -> Prefix + Send + Sync;

/// A monotone finite-prefix-to-finite-prefix map with explicit fuel.
///
/// Invariants (tested, not enforced by construction): extending the input
/// or the fuel extends the output, and the output depends on nothing but
/// input prefix and fuel.
#[derive(Clone)]
pub struct PrefixTransformer {
    name: Arc<str>,
    f: Arc<TransformFn>,
}

impl fmt::Debug for PrefixTransformer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrefixTransformer({})", self.name)
    }
}

impl PrefixTransformer {
    pub fn new<F>(name: &str, f: F) -> Self
    where
        F: Fn(&Prefix, u64) -> Prefix + Send + Sync + 'static,
    {
        PrefixTransformer {
            name: Arc::from(name),
            f: Arc::new(f),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Longest output prefix derivable from `input` within `fuel` steps.
    pub fn apply(&self, input: &Prefix, fuel: u64) -> Prefix {
        (self.f)(input, fuel)
    }

    pub fn identity() -> Self {
        PrefixTransformer::new("id", |u: &Prefix, _| u.clone())
    }

    pub fn drop_first() -> Self {
        PrefixTransformer::new("drop1", |u: &Prefix, _| Prefix(u.0[1.min(u.0.len())..].to_vec()))
    }

    /// Pointwise symbol substitution.
    pub fn symbol_map<F>(name: &str, f: F) -> Self
    where
        F: Fn(&Sym) -> Sym + Send + Sync + 'static,
    {
        PrefixTransformer::new(name, move |u: &Prefix, _| {
            Prefix(u.0.iter().map(&f).collect())
        })
    }

    /// Position remapping: output position `j` reads input position `pos(j)`.
    pub fn reindex<F>(name: &str, pos: F) -> Self
    where
        F: Fn(u64) -> u64 + Send + Sync + 'static,
    {
        PrefixTransformer::new(name, move |u: &Prefix, fuel| {
            let mut out = Vec::new();
            for j in 0..fuel {
                let p = pos(j);
                match u.at(p as usize) {
                    Some(v) => out.push(v.clone()),
                    None => break,
                }
            }
            Prefix(out)
        })
    }

    /// Prepend fixed symbols to the stream.
    pub fn prepend(syms: Vec<Sym>) -> Self {
        PrefixTransformer::new("prepend", move |u: &Prefix, _| {
            let mut out = syms.clone();
            out.extend(u.0.iter().cloned());
            Prefix(out)
        })
    }

    /// Swap the two arms of the binary pairing.
    pub fn swap_pair() -> Self {
        PrefixTransformer::reindex("swap-pair", |j| if j % 2 == 0 { j + 1 } else { j - 1 })
    }

    /// Apply `t1` to the even arm and `t2` to the odd arm of a paired name.
    pub fn pair_map(t1: PrefixTransformer, t2: PrefixTransformer) -> Self {
        PrefixTransformer::new("pair-map", move |u: &Prefix, fuel| {
            let evens = Prefix(u.0.iter().step_by(2).cloned().collect());
            let odds = Prefix(u.0.iter().skip(1).step_by(2).cloned().collect());
            let a = t1.apply(&evens, fuel);
            let b = t2.apply(&odds, fuel);
            let len = (2 * a.len()).min(2 * b.len() + 1);
            let mut out = Vec::with_capacity(len);
            for m in 0..len {
                let v = if m % 2 == 0 { &a.0[m / 2] } else { &b.0[m / 2] };
                out.push(v.clone());
            }
            Prefix(out)
        })
    }

    /// Apply `t` to every component of a tuple-coded name.
    pub fn tuple_map(t: PrefixTransformer) -> Self {
        PrefixTransformer::new("tuple-map", move |u: &Prefix, fuel| {
            let horizon = u.len() as u64;
            // Component i is available up to the largest j with all
            // positions cantor(i, 0..=j) inside the input prefix.
            let avail = |i: u64| -> Prefix {
                let mut vals = Vec::new();
                let mut j = 0u64;
                while cantor(i, j) < horizon {
                    vals.push(u.0[cantor(i, j) as usize].clone());
                    j += 1;
                }
                Prefix(vals)
            };
            let mut outs: Vec<Prefix> = Vec::new();
            let mut out = Vec::new();
            for m in 0..fuel {
                let (i, j) = cantor_unpair(m);
                while outs.len() <= i as usize {
                    let idx = outs.len() as u64;
                    outs.push(t.apply(&avail(idx), fuel));
                }
                match outs[i as usize].at(j as usize) {
                    Some(v) => out.push(v.clone()),
                    None => break,
                }
            }
            Prefix(out)
        })
    }

    /// Tag-dispatched map on a coproduct name: the leading symbol selects
    /// which transformer handles the rest.
    pub fn coproduct_map(ts: Vec<PrefixTransformer>) -> Self {
        PrefixTransformer::new("coproduct-map", move |u: &Prefix, fuel| {
            let Some(tag) = u.at(0) else {
                return Prefix::new();
            };
            let Ok(tag_idx) = usize::try_from(tag) else {
                return Prefix::new();
            };
            let Some(t) = ts.get(tag_idx) else {
                return Prefix::new();
            };
            let rest = Prefix(u.0[1..].to_vec());
            let mut out = vec![tag.clone()];
            out.extend(t.apply(&rest, fuel).0);
            Prefix(out)
        })
    }
}

/// Pointwise composition: `compose(t2, t1)` applies `t1` first.
pub fn compose(t2: &PrefixTransformer, t1: &PrefixTransformer) -> PrefixTransformer {
    let t1 = t1.clone();
    let t2 = t2.clone();
    let name = format!("{}∘{}", t2.name(), t1.name());
    PrefixTransformer::new(&name, move |u: &Prefix, fuel| {
        t2.apply(&t1.apply(u, fuel), fuel)
    })
}

/// Evaluate `t` on `p`: the longest output prefix of length at most
/// `out_len` derivable within `budget`.
pub fn run(
    t: &PrefixTransformer,
    p: &Stream,
    out_len: usize,
    budget: Budget,
) -> Result<Prefix, BudgetExhausted> {
    let input = p.prefix(budget.max_input as usize);
    let out = t.apply(&input, budget.max_steps).truncated(out_len);
    if out.len() >= out_len {
        Ok(out)
    } else {
        Err(BudgetExhausted {
            partial: out,
            wanted: out_len,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::pairing::sym;

    fn ids(p: &Prefix) -> Vec<u64> {
        p.to_u64s().unwrap()
    }

    #[test]
    fn pair_interleaves() {
        let p = Stream::constant(0);
        let q = Stream::constant(1);
        let r = Stream::pair(p, q);
        assert_eq!(ids(&r.prefix(6)), vec![0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn unpair_inverts_pair() {
        let p = Stream::from_fn(|i| sym(i));
        let q = Stream::constant(0);
        let (p2, q2) = Stream::pair(p.clone(), q.clone()).unpair();
        for i in 0..16 {
            assert_eq!(p2.at(i), p.at(i));
            assert_eq!(q2.at(i), q.at(i));
        }
    }

    #[test]
    fn pair_defining_formula_on_seeded_streams() {
        // pair(p,q)(5) = q(2), and generally the defining formula, on 20
        // seeded stream pairs.
        for seed in 0..20u64 {
            let s1 = seed;
            let s2 = seed.wrapping_mul(31).wrapping_add(7);
            let p = Stream::from_fn(move |i| sym((i.wrapping_mul(2654435761).wrapping_add(s1)) % 97));
            let q = Stream::from_fn(move |i| sym((i.wrapping_mul(40503).wrapping_add(s2)) % 89));
            let r = Stream::pair(p.clone(), q.clone());
            assert_eq!(r.at(5), q.at(2));
            for n in 0..10 {
                assert_eq!(r.at(2 * n), p.at(n));
                assert_eq!(r.at(2 * n + 1), q.at(n));
            }
        }
    }

    #[test]
    fn tuple_component_inverse() {
        let t = Stream::tuple(|i| Stream::constant(i));
        // tuple of constant streams: output(cantor(3,5)) = 3, checked
        // brute-force over i, j <= 8.
        for i in 0..=8 {
            for j in 0..=8 {
                assert_eq!(t.at(cantor(i, j)), sym(i));
            }
        }
        let p0 = Stream::from_fn(|j| sym(j * j));
        let p0c = p0.clone();
        let tp = Stream::tuple(move |i| if i == 0 { p0c.clone() } else { Stream::constant(i) });
        let c0 = tp.component(0);
        for j in 0..16 {
            assert_eq!(c0.at(j), p0.at(j));
        }
    }

    #[test]
    fn run_identity_and_drop() {
        let p = Stream::from_prefix_cycle(vec![sym(4), sym(7), sym(1), sym(9)], vec![sym(0)]);
        let got = run(&PrefixTransformer::identity(), &p, 3, Budget::default()).unwrap();
        assert_eq!(ids(&got), vec![4, 7, 1]);
        let got = run(&PrefixTransformer::drop_first(), &p, 3, Budget::default()).unwrap();
        assert_eq!(ids(&got), vec![7, 1, 9]);
    }

    #[test]
    fn run_budget_exhaustion_is_not_fabrication() {
        // A transformer that needs to see index 100 for its first symbol.
        let t = PrefixTransformer::new("deep", |u: &Prefix, _| {
            if u.len() > 100 {
                Prefix(vec![u.0[100].clone()])
            } else {
                Prefix::new()
            }
        });
        let p = Stream::constant(3);
        let err = run(&t, &p, 1, Budget::new(10, 100)).unwrap_err();
        assert_eq!(err.partial.len(), 0);
        assert!(run(&t, &p, 1, Budget::new(128, 100)).is_ok());
    }

    #[test]
    fn compose_identity_neutral_and_drop_twice() {
        let t = PrefixTransformer::symbol_map("inc", |s| s + 1u32);
        let c = compose(&PrefixTransformer::identity(), &t);
        for seed in 0..30u64 {
            let u = Prefix::from_u64s(&[seed, seed + 1, 3 * seed]);
            assert_eq!(c.apply(&u, 64), t.apply(&u, 64));
        }
        let d2 = compose(&PrefixTransformer::drop_first(), &PrefixTransformer::drop_first());
        let u = Prefix::from_u64s(&[5, 6, 7, 8]);
        assert_eq!(ids(&d2.apply(&u, 64)), vec![7, 8]);
    }

    #[test]
    fn pair_map_splits_arms() {
        let inc = PrefixTransformer::symbol_map("inc", |s| s + 1u32);
        let t = PrefixTransformer::pair_map(inc, PrefixTransformer::identity());
        let u = Prefix::from_u64s(&[10, 20, 11, 21, 12, 22]);
        assert_eq!(ids(&t.apply(&u, 64)), vec![11, 20, 12, 21, 13, 22]);
    }

    #[test]
    fn swap_pair_swaps() {
        let t = PrefixTransformer::swap_pair();
        let u = Prefix::from_u64s(&[1, 2, 3, 4]);
        assert_eq!(ids(&t.apply(&u, 64)), vec![2, 1, 4, 3]);
    }
}
