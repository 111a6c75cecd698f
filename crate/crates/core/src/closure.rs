//! Generation closure: any one term of an exact complex lies in the
//! triangulated span of the others.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::bott::{k_resolution, sequences_lambda1, ExactSequence};
use crate::weights::Weight;
use crate::windows::DEFAULT_BOX;
use crate::Result;

/// A summand of a template slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Item {
    Bundle(Weight),
    /// The distinguished kernel object `𝒦`, never twisted.
    Kernel,
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Bundle(w) => write!(f, "{w}"),
            Item::Kernel => f.write_str("K"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceTemplate {
    pub name: String,
    /// Slots of an exact complex; each slot is a direct sum.
    pub slots: Vec<Vec<Item>>,
    /// Whether `det^k` twists are allowed.
    pub twistable: bool,
}

impl SequenceTemplate {
    pub fn from_sequence(name: impl Into<String>, seq: &ExactSequence) -> Self {
        SequenceTemplate {
            name: name.into(),
            slots: seq
                .terms
                .iter()
                .map(|t| t.iter().filter(|(_, m)| *m > 0).map(|(w, _)| Item::Bundle(w)).collect())
                .collect(),
            twistable: true,
        }
    }

    /// `𝒦` followed by the terms of its resolution; only used untwisted.
    pub fn kernel_resolution() -> Self {
        let by = k_resolution().by_degree();
        let mut slots = vec![vec![Item::Kernel]];
        for t in by.values() {
            slots.push(t.support().into_iter().map(Item::Bundle).collect());
        }
        SequenceTemplate { name: "K-resolution".into(), slots, twistable: false }
    }

    fn bundles(&self) -> impl Iterator<Item = Weight> + '_ {
        self.slots.iter().flatten().filter_map(|i| match i {
            Item::Bundle(w) => Some(*w),
            Item::Kernel => None,
        })
    }

    /// Twists keeping every bundle inside `[−box, box]²`.
    pub fn twist_range(&self, bound: i64) -> Vec<i64> {
        let in_box = |k: i64| self.bundles().all(|w| w.twist(k).norm_inf() <= bound);
        if !self.twistable {
            return if in_box(0) { vec![0] } else { vec![] };
        }
        (-2 * bound..=2 * bound).filter(|&k| in_box(k)).collect()
    }

    fn twisted_slot(&self, slot: usize, k: i64) -> Vec<Item> {
        self.slots[slot]
            .iter()
            .map(|i| match i {
                Item::Bundle(w) => Item::Bundle(w.twist(k)),
                Item::Kernel => Item::Kernel,
            })
            .collect()
    }
}

/// The three `λ₁` sequences as templates.
pub fn lambda1_templates() -> Result<Vec<SequenceTemplate>> {
    Ok(sequences_lambda1()?
        .iter()
        .enumerate()
        .map(|(i, s)| SequenceTemplate::from_sequence(format!("seq{}", i + 1), s))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub template: String,
    pub twist: i64,
    /// Index of the slot that was filled in.
    pub slot: usize,
    pub produced: Vec<Item>,
    /// The other items of the complex, all previously generated.
    pub used: Vec<Item>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureState {
    pub bound: i64,
    pub initial: BTreeSet<Item>,
    pub generated: BTreeSet<Item>,
    pub trace: Vec<TraceStep>,
    /// Step index producing each non-initial item.
    #[serde(skip)]
    producer: BTreeMap<Item, usize>,
}

/// Least fixed point of the one-missing-slot rule.
pub fn closure(initial: &BTreeSet<Item>, templates: &[SequenceTemplate], bound: i64) -> ClosureState {
    let mut st = ClosureState {
        bound,
        initial: initial.clone(),
        generated: initial.clone(),
        trace: vec![],
        producer: BTreeMap::new(),
    };
    let ranges: Vec<Vec<i64>> = templates.iter().map(|t| t.twist_range(bound)).collect();
    loop {
        let mut changed = false;
        for (t, range) in templates.iter().zip(&ranges) {
            for &k in range {
                let slots: Vec<Vec<Item>> = (0..t.slots.len()).map(|s| t.twisted_slot(s, k)).collect();
                let missing: Vec<usize> =
                    (0..slots.len()).filter(|&s| !slots[s].iter().all(|i| st.generated.contains(i))).collect();
                if missing.len() != 1 {
                    continue;
                }
                let s = missing[0];
                let produced: Vec<Item> = slots[s].iter().filter(|i| !st.generated.contains(i)).copied().collect();
                let used: Vec<Item> =
                    slots.iter().enumerate().filter(|(i, _)| *i != s).flat_map(|(_, v)| v.iter().copied()).collect();
                let step = st.trace.len();
                for i in &produced {
                    st.generated.insert(*i);
                    st.producer.insert(*i, step);
                }
                st.trace.push(TraceStep { template: t.name.clone(), twist: k, slot: s, produced, used });
                changed = true;
            }
        }
        if !changed {
            return st;
        }
    }
}

impl ClosureState {
    pub fn weights(&self) -> BTreeSet<Weight> {
        self.generated
            .iter()
            .filter_map(|i| match i {
                Item::Bundle(w) => Some(*w),
                Item::Kernel => None,
            })
            .collect()
    }

    pub fn contains(&self, chi: &Weight) -> bool {
        self.generated.contains(&Item::Bundle(*chi))
    }

    /// Membership plus the derivation steps it depends on, in order.
    pub fn is_generated(&self, chi: &Weight) -> (bool, Vec<TraceStep>) {
        let item = Item::Bundle(*chi);
        if !self.generated.contains(&item) {
            return (false, vec![]);
        }
        let mut needed = BTreeSet::new();
        let mut stack = vec![item];
        while let Some(i) = stack.pop() {
            if let Some(&s) = self.producer.get(&i) {
                if needed.insert(s) {
                    stack.extend(self.trace[s].used.iter().copied());
                }
            }
        }
        (true, needed.into_iter().map(|s| self.trace[s].clone()).collect())
    }

    /// Index of the step producing `chi`.
    pub fn step_of(&self, chi: &Weight) -> Option<usize> {
        self.producer.get(&Item::Bundle(*chi)).copied()
    }
}

pub fn bundles(ws: impl IntoIterator<Item = Weight>) -> BTreeSet<Item> {
    ws.into_iter().map(Item::Bundle).collect()
}

/// Closure of `∇₊` under the `λ₁` sequences, optionally with `𝒦` and its
/// resolution.
pub fn standard_closure(with_k: bool, bound: i64) -> Result<ClosureState> {
    use crate::git::Side;
    use crate::windows::WindowSet;
    let mut init = bundles(WindowSet::standard(Side::Plus).enumerate(DEFAULT_BOX));
    let mut templates = lambda1_templates()?;
    if with_k {
        init.insert(Item::Kernel);
        templates.push(SequenceTemplate::kernel_resolution());
    }
    Ok(closure(&init, &templates, bound))
}
