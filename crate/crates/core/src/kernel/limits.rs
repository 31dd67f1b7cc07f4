//! Limit names, revision logs and machines that rewrite their output.
//!
//! A limit name packs a sequence of streams into one stream through the
//! countable tupling; its decoded value is the coordinatewise eventual
//! value. A revision machine is an ordinary transformer whose output
//! symbols are interpreted as `(cell, value)` write events.

use super::pairing::{cantor, cantor_big, cantor_unpair, cantor_unpair_big, sym};
use super::{compose, run, Budget, Prefix, PrefixTransformer, Stream, Sym};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

/// A stream read through the infinite tupling as a sequence of
/// approximant streams converging coordinatewise.
#[derive(Clone)]
pub struct LimitName {
    pub carrier: Stream,
}

impl LimitName {
    pub fn new(carrier: Stream) -> Self {
        LimitName { carrier }
    }

    /// The `i`-th approximant stream.
    pub fn approximant(&self, i: u64) -> Stream {
        self.carrier.component(i)
    }

    /// Pack a family of approximants into a limit name.
    pub fn from_family<F>(family: F) -> Self
    where
        F: Fn(u64) -> Stream + Send + Sync + 'static,
    {
        LimitName::new(Stream::tuple(family))
    }

    /// Coordinate `j` of the decoded value, read at stage `stage`.
    /// Exact whenever `stage` is at or past the coordinate's modulus.
    pub fn decode_coord_at(&self, j: u64, stage: u64) -> Sym {
        self.carrier.at(cantor(stage, j))
    }

    /// Decode through the carrier's modulus annotation, when present.
    pub fn decode_coord(&self, j: u64) -> Option<Sym> {
        let stage = self.carrier.modulus_at(j)?;
        Some(self.decode_coord_at(j, stage))
    }

    /// Verifier-style decode: scan stages up to `probe` and demand that
    /// the value is stable over the trailing `window` stages.
    pub fn decode_coord_probed(&self, j: u64, probe: u64, window: u64) -> Option<Sym> {
        let v = self.decode_coord_at(j, probe);
        for s in probe.saturating_sub(window)..probe {
            if self.decode_coord_at(j, s) != v {
                return None;
            }
        }
        Some(v)
    }
}

/// Finite log of `(cell, value)` write events with derived views.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RevisionLog {
    pub writes: Vec<(Sym, Sym)>,
}

/// A cell whose revision count exceeded the verifier's bound.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("cell {cell} revised {revisions} times (bound {bound})")]
pub struct DivergentCell {
    pub cell: Sym,
    pub revisions: u64,
    pub bound: u64,
}

impl RevisionLog {
    /// Decode a write stream under the fixed coding `write(c,v) = cantor(c,v)`.
    pub fn from_write_prefix(p: &Prefix) -> Self {
        RevisionLog {
            writes: p.0.iter().map(cantor_unpair_big).collect(),
        }
    }

    /// Current value per cell (replaying the writes).
    pub fn current(&self) -> BTreeMap<Sym, Sym> {
        let mut m = BTreeMap::new();
        for (c, v) in &self.writes {
            m.insert(c.clone(), v.clone());
        }
        m
    }

    /// Number of writes that overwrote a differing value, per cell.
    pub fn mind_changes_per_cell(&self) -> BTreeMap<Sym, u64> {
        let mut cur: BTreeMap<Sym, Sym> = BTreeMap::new();
        let mut changes: BTreeMap<Sym, u64> = BTreeMap::new();
        for (c, v) in &self.writes {
            if let Some(old) = cur.get(c) {
                if old != v {
                    *changes.entry(c.clone()).or_insert(0) += 1;
                }
            }
            changes.entry(c.clone()).or_insert(0);
            cur.insert(c.clone(), v.clone());
        }
        changes
    }

    /// Total mind changes across all cells.
    pub fn total_mind_changes(&self) -> u64 {
        self.mind_changes_per_cell().values().sum()
    }

    /// Verifier check that no cell exceeds the revision bound.
    pub fn verify_bounded(&self, bound: u64) -> Result<(), DivergentCell> {
        for (cell, revisions) in self.mind_changes_per_cell() {
            if revisions > bound {
                return Err(DivergentCell {
                    cell,
                    revisions,
                    bound,
                });
            }
        }
        Ok(())
    }
}

/// View a transformer as a revision machine: its output symbols are
/// write events under the coding `write(c, v) = cantor(c, v)`.
#[derive(Clone)]
pub struct LimitMachine {
    pub machine: PrefixTransformer,
}

impl LimitMachine {
    pub fn new(machine: PrefixTransformer) -> Self {
        LimitMachine { machine }
    }

    /// Run on an input prefix and expose the revision log.
    pub fn log(&self, input: &Prefix, fuel: u64) -> RevisionLog {
        RevisionLog::from_write_prefix(&self.machine.apply(input, fuel))
    }
}

/// Encode a write event.
pub fn write_code(cell: &Sym, value: &Sym) -> Sym {
    cantor_big(cell, value)
}

/// The one-mind-change machine deciding whether a zero occurs: it writes
/// value 1 to cell 0 up front and revises to 0 when a zero shows up.
pub fn lpo_machine() -> LimitMachine {
    LimitMachine::new(PrefixTransformer::new("lpo", |u: &Prefix, _| {
        let mut out = vec![write_code(&sym(0), &sym(1))];
        if u.0.iter().any(|s| *s == sym(0)) {
            out.push(write_code(&sym(0), &sym(0)));
        }
        Prefix(out)
    }))
}

/// Total lazy image of a transformer on a stream: each position is
/// evaluated under doubling budgets until produced. Monotonicity of the
/// transformer makes the value independent of the budget that first
/// produced it; positions that stay unproduced after the growth cap
/// read as 0.
pub fn stream_image(t: &PrefixTransformer, input: &Stream) -> Stream {
    let t = t.clone();
    let input = input.clone();
    Stream::from_fn(move |n| {
        let mut budget = Budget::new(64.max(n + 1), 64.max(n + 1));
        for _ in 0..24 {
            match run(&t, &input, n as usize + 1, budget) {
                Ok(p) => return p.0[n as usize].clone(),
                Err(_) => budget = budget.doubled(),
            }
        }
        Sym::default()
    })
    .memoized()
}

type StreamFn = Arc<dyn Fn(&Stream) -> Stream + Send + Sync>;

/// Stream-level push below one limit: apply `f` to every approximant of
/// a limit name, reading approximant `i` only on its fixed window (the
/// first `i` symbols, zeros beyond). Evaluation is sparse: one output
/// position touches one approximant, and rows are cached.
pub fn lift_stream_fn(f: StreamFn) -> StreamFn {
    Arc::new(move |limit_name: &Stream| {
        let ln = limit_name.clone();
        let f = f.clone();
        let rows: std::sync::Mutex<BTreeMap<u64, Stream>> = std::sync::Mutex::new(BTreeMap::new());
        Stream::from_fn(move |n| {
            let (i, m) = cantor_unpair(n);
            let row = {
                let mut rows = rows.lock().expect("lift row cache poisoned");
                rows.entry(i)
                    .or_insert_with(|| {
                        let comp = ln.component(i);
                        let windowed = Stream::from_fn(move |j| {
                            if j < i {
                                comp.at(j)
                            } else {
                                Sym::default()
                            }
                        });
                        f(&windowed)
                    })
                    .clone()
            };
            row.at(m)
        })
    })
}

/// Push a transformer below one limit, prefix level: the returned
/// transformer maps a limit name `<p_0, p_1, ...>` to the limit name
/// `<t~(p_0), t~(p_1), ...>` where `t~` runs `t` on a fixed window (the
/// first `i` symbols of the `i`-th approximant) and pads unproduced
/// coordinates with 0. Coordinatewise eventual values agree with
/// `t(lim p_i)`.
pub fn lift_through_limit(t: &PrefixTransformer) -> PrefixTransformer {
    let t = t.clone();
    let name = format!("lift({})", t.name());
    PrefixTransformer::new(&name, move |u: &Prefix, fuel| {
        let horizon = u.len() as u64;
        // Approximant i is committed once its window (first i symbols of
        // component i) lies inside the input prefix.
        let committed = |i: u64| -> Option<Prefix> {
            let mut vals = Vec::new();
            for j in 0..i {
                let pos = cantor(i, j);
                if pos >= horizon {
                    return None;
                }
                vals.push(u.0[pos as usize].clone());
            }
            Some(Prefix(vals))
        };
        let mut outs: Vec<Option<Prefix>> = Vec::new();
        let mut out = Vec::new();
        for m in 0..fuel {
            let (i, j) = cantor_unpair(m);
            while outs.len() <= i as usize {
                let idx = outs.len() as u64;
                // Fixed per-row fuel keeps committed positions independent
                // of the global fuel, so growing the budget only extends
                // the output.
                let fuel_i = (idx + 1) * (idx + 2);
                outs.push(committed(idx).map(|w| t.apply(&w, fuel_i)));
            }
            match &outs[i as usize] {
                Some(w) => out.push(w.at(j as usize).cloned().unwrap_or_default()),
                None => break,
            }
        }
        Prefix(out)
    })
}

/// A machine whose output decodes through `level` nested limits. The
/// prefix-level `machine` is the realizer handed to harnesses; `sem` is
/// the same map evaluated lazily for deep decoding.
#[derive(Clone)]
pub struct RevisionTower {
    pub level: u32,
    pub machine: PrefixTransformer,
    sem: StreamFn,
}

impl RevisionTower {
    pub fn new(level: u32, machine: PrefixTransformer) -> Self {
        let m = machine.clone();
        RevisionTower {
            level,
            machine,
            sem: Arc::new(move |s: &Stream| stream_image(&m, s)),
        }
    }

    pub fn plain(machine: PrefixTransformer) -> Self {
        RevisionTower::new(0, machine)
    }

    /// Lazy output stream on `input`.
    pub fn output(&self, input: &Stream) -> Stream {
        (self.sem)(input)
    }

    /// Decode coordinate `coord` through the tower's nested limits,
    /// reading level `k` (outermost first) at stage `stages[k]`.
    pub fn decode_coord(&self, input: &Stream, coord: u64, stages: &[u64]) -> Sym {
        assert_eq!(stages.len(), self.level as usize, "one stage per level");
        let mut pos = coord;
        for s in stages.iter().rev() {
            pos = cantor(*s, pos);
        }
        self.output(input).at(pos)
    }
}

/// Compose two towers; the composite decodes through the sum of the
/// levels. The outer machine is pushed below the inner machine's limits.
pub fn level_compose(outer: &RevisionTower, inner: &RevisionTower) -> RevisionTower {
    let mut machine = outer.machine.clone();
    let mut sem = outer.sem.clone();
    for _ in 0..inner.level {
        machine = lift_through_limit(&machine);
        sem = lift_stream_fn(sem);
    }
    let inner_sem = inner.sem.clone();
    RevisionTower {
        level: outer.level + inner.level,
        machine: compose(&machine, &inner.machine),
        sem: Arc::new(move |s: &Stream| sem(&inner_sem(s))),
    }
}
