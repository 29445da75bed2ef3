//! Diagrams of paired critical points ordered by height, and the search for
//! a sequence of crossings and deaths that leaves only the extrema.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::{canonical_form, BarannikovError, FieldSpec};
use crate::morse::{GermComplex, Label};

/// Default cap on distinct states visited by [`reduce_to_trivial`].
pub const STATE_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FmcVertex {
    pub id: String,
    pub index: usize,
    pub label: Label,
    /// Position of the paired vertex in the same state.
    pub partner: Option<usize>,
}

/// Vertices listed from the highest to the lowest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FmcState {
    n: usize,
    vertices: Vec<FmcVertex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Source,
    Target,
    Unpaired,
}

impl FmcState {
    pub fn new(n: usize, vertices: Vec<FmcVertex>) -> Result<Self, BarannikovError> {
        let state = FmcState { n, vertices };
        state.check().map_err(BarannikovError::NotCanonical)?;
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[FmcVertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Only an unpaired plus maximum above an unpaired minus minimum.
    pub fn is_trivial(&self) -> bool {
        match self.vertices.as_slice() {
            [top, bottom] => {
                top.index == self.n
                    && top.label == Label::Plus
                    && top.partner.is_none()
                    && bottom.index == 0
                    && bottom.label == Label::Minus
                    && bottom.partner.is_none()
            }
            _ => false,
        }
    }

    fn check(&self) -> Result<(), String> {
        for (i, v) in self.vertices.iter().enumerate() {
            if v.index > self.n {
                return Err(format!("{} has index {} above {}", v.id, v.index, self.n));
            }
            let Some(j) = v.partner else { continue };
            let w = self
                .vertices
                .get(j)
                .ok_or_else(|| format!("{} points past the end", v.id))?;
            if w.partner != Some(i) {
                return Err(format!("{} and {} are not mutually paired", v.id, w.id));
            }
            if v.index.abs_diff(w.index) != 1 {
                return Err(format!("{} and {} are not in adjacent indices", v.id, w.id));
            }
            let (hi, lo) = if i < j { (v, w) } else { (w, v) };
            if hi.index != lo.index + 1 {
                return Err(format!("{} lies above its source {}", hi.id, lo.id));
            }
        }
        Ok(())
    }

    fn role(&self, i: usize) -> Role {
        match self.vertices[i].partner {
            None => Role::Unpaired,
            Some(j) if self.vertices[j].index < self.vertices[i].index => Role::Source,
            Some(_) => Role::Target,
        }
    }

    fn key(&self) -> Vec<(usize, Label, Option<usize>)> {
        self.vertices
            .iter()
            .map(|v| (v.index, v.label, v.partner))
            .collect()
    }

    fn extremal(&self) -> bool {
        match (self.vertices.first(), self.vertices.last()) {
            (Some(top), Some(bottom)) => top.index == self.n && bottom.index == 0,
            _ => false,
        }
    }

    /// Swaps positions `i` and `i + 1`, keeping every pairing.
    fn swapped(&self, i: usize) -> FmcState {
        let remap = |p: usize| {
            if p == i {
                i + 1
            } else if p == i + 1 {
                i
            } else {
                p
            }
        };
        let mut vertices = self.vertices.clone();
        vertices.swap(i, i + 1);
        for v in &mut vertices {
            v.partner = v.partner.map(remap);
        }
        FmcState {
            n: self.n,
            vertices,
        }
    }

    /// Re-pairs `a` with `pa` and `b` with `pb` (positions in `self`).
    fn repaired(&self, a: usize, pa: Option<usize>, b: usize, pb: Option<usize>) -> FmcState {
        let mut next = self.clone();
        for v in [a, b] {
            if let Some(old) = next.vertices[v].partner.take() {
                next.vertices[old].partner = None;
            }
        }
        for (v, p) in [(a, pa), (b, pb)] {
            if let Some(p) = p {
                next.vertices[v].partner = Some(p);
                next.vertices[p].partner = Some(v);
            }
        }
        next
    }

    /// Removes positions `i` and `i + 1`.
    fn without_pair(&self, i: usize) -> FmcState {
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i && j != i + 1)
            .map(|(_, v)| {
                let mut v = v.clone();
                v.partner = v.partner.map(|p| if p > i + 1 { p - 2 } else { p });
                v
            })
            .collect();
        FmcState {
            n: self.n,
            vertices,
        }
    }

    /// Pairing outcomes when the vertices at `i` and `i + 1` share an index
    /// and trade places. Positions refer to the state before the swap.
    fn same_index_outcomes(&self, i: usize) -> Vec<(bool, FmcState)> {
        let (u, l) = (i, i + 1);
        let (pu, pl) = (self.vertices[u].partner, self.vertices[l].partner);
        let rewire = |su: &FmcState| -> FmcState { su.repaired(u, pl, l, pu) };
        let both = match (self.role(u), self.role(l)) {
            // both map down: nested targets can trade
            (Role::Source, Role::Source) => pu > pl,
            // both are hit from above (unpaired counts as hit from infinity)
            (Role::Target | Role::Unpaired, Role::Target | Role::Unpaired) => match (pu, pl) {
                (_, None) => pu.is_some(),
                (None, Some(_)) => false,
                (Some(a), Some(b)) => b < a,
            },
            (Role::Target | Role::Unpaired, Role::Source) => true,
            (Role::Source, Role::Target | Role::Unpaired) => false,
        };
        let mut out = vec![(false, self.swapped(i))];
        if both {
            out.push((true, rewire(self).swapped(i)));
        }
        out
    }

    fn successors(&self) -> Vec<(FmcMove, FmcState)> {
        let mut out = Vec::new();
        let keep_extremal = self.extremal();
        for i in 0..self.vertices.len().saturating_sub(1) {
            let (u, l) = (&self.vertices[i], &self.vertices[i + 1]);
            if u.partner == Some(i + 1) {
                if u.label == l.label {
                    out.push((
                        FmcMove::Death {
                            source: u.id.clone(),
                            target: l.id.clone(),
                        },
                        self.without_pair(i),
                    ));
                }
                continue;
            }
            let mover = if u.label == Label::Plus {
                u
            } else if l.label == Label::Minus {
                l
            } else {
                continue;
            };
            let outcomes = if u.index == l.index {
                self.same_index_outcomes(i)
            } else {
                vec![(false, self.swapped(i))]
            };
            for (rewired, next) in outcomes {
                if keep_extremal && !next.extremal() {
                    continue;
                }
                debug_assert!(next.check().is_ok(), "{:?}", next.check());
                out.push((
                    FmcMove::Crossing {
                        upper: u.id.clone(),
                        lower: l.id.clone(),
                        mover: mover.id.clone(),
                        rewired,
                    },
                    next,
                ));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FmcMove {
    /// `upper` and `lower` trade heights; `mover` is the vertex whose label
    /// allows the move. `rewired` marks the alternative pairing outcome.
    Crossing {
        upper: String,
        lower: String,
        mover: String,
        rewired: bool,
    },
    Death {
        source: String,
        target: String,
    },
}

impl fmt::Display for FmcMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FmcMove::Crossing {
                upper,
                lower,
                mover,
                rewired,
            } => write!(
                f,
                "cross {upper} over {lower} (moving {mover}){}",
                if *rewired { ", pairs exchanged" } else { "" }
            ),
            FmcMove::Death { source, target } => write!(f, "cancel {source} with {target}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub reducible: bool,
    /// A shortest move sequence reaching the trivial diagram, when reducible.
    pub trace: Vec<FmcMove>,
    pub states_explored: usize,
}

/// Vertices by descending value, paired by the canonical form over `field`.
pub fn fmc_from_germ(germ: &GermComplex, field: FieldSpec) -> Result<FmcState, BarannikovError> {
    let cf = canonical_form(germ, field)?;
    let mut pts: Vec<_> = germ.points().iter().collect();
    pts.sort_by(|a, b| b.value.cmp(&a.value));
    let position: HashMap<&str, usize> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.id.as_str(), i))
        .collect();
    let vertices = pts
        .iter()
        .map(|p| FmcVertex {
            id: p.id.clone(),
            index: p.index,
            label: p.label,
            partner: cf.partner(&p.id).map(|q| position[q]),
        })
        .collect();
    FmcState::new(germ.n(), vertices)
}

/// Breadth-first search over crossings and deaths for the trivial diagram.
pub fn reduce_to_trivial(start: &FmcState) -> Result<Reduction, BarannikovError> {
    reduce_to_trivial_with_limit(start, STATE_LIMIT)
}

pub fn reduce_to_trivial_with_limit(
    start: &FmcState,
    limit: usize,
) -> Result<Reduction, BarannikovError> {
    start.check().map_err(BarannikovError::NotCanonical)?;
    let mut states = vec![start.clone()];
    let mut parent: Vec<Option<(usize, FmcMove)>> = vec![None];
    let mut seen = HashMap::from([(start.key(), 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(at) = queue.pop_front() {
        if states[at].is_trivial() {
            let mut trace = Vec::new();
            let mut cur = at;
            while let Some((prev, mv)) = parent[cur].clone() {
                trace.push(mv);
                cur = prev;
            }
            trace.reverse();
            return Ok(Reduction {
                reducible: true,
                trace,
                states_explored: states.len(),
            });
        }
        for (mv, next) in states[at].successors() {
            let key = next.key();
            if seen.contains_key(&key) {
                continue;
            }
            if states.len() >= limit {
                return Err(BarannikovError::StateLimit(limit));
            }
            seen.insert(key, states.len());
            states.push(next);
            parent.push(Some((at, mv)));
            queue.push_back(states.len() - 1);
        }
    }
    Ok(Reduction {
        reducible: false,
        trace: Vec::new(),
        states_explored: states.len(),
    })
}
