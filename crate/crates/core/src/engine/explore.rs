//! Level-synchronous breadth-first exploration.
//!
//! Each level is expanded (optionally in parallel) into per-form successor
//! lists that keep frontier order; the lists are then merged sequentially.
//! State numbering, parent links and the truncation point therefore do not
//! depend on the worker count.

use indexmap::IndexSet;
use rayon::prelude::*;
use rustc_hash::FxBuildHasher;

use super::compiled::{Compiled, Form};
use super::{SearchBounds, SearchOptions, SearchStats};

/// Returns true for forms the search should drop.
pub(crate) type Prune<'a> = &'a (dyn Fn(&[u16]) -> bool + Sync);

pub(crate) type StateSet = IndexSet<Form, FxBuildHasher>;

/// `(parent state, rule index, position)`; `None` for start forms.
pub(crate) type Parent = Option<(u32, u32, u32)>;

pub(crate) struct Exploration {
    pub states: StateSet,
    pub parents: Vec<Parent>,
    pub stats: SearchStats,
}

struct Expansion {
    kept: Vec<(u32, u32, Form)>,
    form_len_pruned: u64,
    assumption_pruned: u64,
}

pub(crate) fn explore(
    c: &Compiled,
    starts: &[Form],
    bounds: &SearchBounds,
    opts: &SearchOptions,
    prune: Option<Prune<'_>>,
) -> Exploration {
    let mut states = StateSet::default();
    let mut parents = Vec::new();
    let mut stats = SearchStats::default();
    let mut frontier: Vec<u32> = Vec::new();

    for s in starts {
        if s.len() > bounds.max_form_len {
            stats.form_len_pruned += 1;
            continue;
        }
        if states.len() >= bounds.max_states {
            stats.budget_hit = true;
            break;
        }
        let (i, new) = states.insert_full(s.clone());
        if new {
            parents.push(None);
            frontier.push(i as u32);
        }
    }

    let pool = if opts.workers > 1 {
        rayon::ThreadPoolBuilder::new().num_threads(opts.workers).build().ok()
    } else {
        None
    };

    let mut depth = 0usize;
    while !frontier.is_empty() && !stats.budget_hit {
        let expand = |&idx: &u32| -> Expansion {
            let form = &states[idx as usize];
            let mut raw = Vec::new();
            c.successors(form, &mut raw);
            let mut e = Expansion {
                kept: Vec::with_capacity(raw.len()),
                form_len_pruned: 0,
                assumption_pruned: 0,
            };
            for (r, p, f) in raw {
                if f.len() > bounds.max_form_len {
                    e.form_len_pruned += 1;
                } else if prune.is_some_and(|pr| pr(&f)) {
                    e.assumption_pruned += 1;
                } else if !states.contains(&f) {
                    e.kept.push((r, p, f));
                }
            }
            e
        };
        let expanded: Vec<Expansion> = match &pool {
            Some(pool) => pool.install(|| frontier.par_iter().map(expand).collect()),
            None => frontier.iter().map(expand).collect(),
        };

        if depth >= bounds.max_steps {
            // Unexpanded level: count the distinct forms we would have added.
            let mut cut = IndexSet::<&Form, FxBuildHasher>::default();
            for e in &expanded {
                for (_, _, f) in &e.kept {
                    cut.insert(f);
                }
            }
            stats.depth_cut = cut.len() as u64;
            break;
        }

        let mut next = Vec::new();
        'merge: for (e, &parent) in expanded.into_iter().zip(&frontier) {
            stats.form_len_pruned += e.form_len_pruned;
            stats.assumption_pruned += e.assumption_pruned;
            for (r, p, f) in e.kept {
                if states.contains(&f) {
                    continue;
                }
                if states.len() >= bounds.max_states {
                    stats.budget_hit = true;
                    break 'merge;
                }
                let (i, _) = states.insert_full(f);
                parents.push(Some((parent, r, p)));
                next.push(i as u32);
            }
        }
        frontier = next;
        depth += 1;
        if !frontier.is_empty() {
            stats.levels = depth;
        }
    }
    stats.states = states.len();
    Exploration {
        states,
        parents,
        stats,
    }
}
