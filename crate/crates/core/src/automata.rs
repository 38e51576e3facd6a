//! Partial deterministic automata over {0, 1} in which every state is both
//! initial and accepting: a word is recognized when some start state admits
//! a run that never falls off a missing transition.
//!
//! Two fixed automata drive the word classifications. The diagonal
//! automaton captures codings of curves that hug a 45-degree line; the
//! non-oscillating variant additionally forbids drifting from one side of
//! that line to the other and back.

use std::sync::LazyLock;

use crate::word::Word;

/// A partial DFA over the two-letter alphabet. States are `0..state_count`;
/// each (state, letter) pair has at most one successor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialDfa {
    transitions: Vec<[Option<usize>; 2]>,
}

/// Outcome of running a word from one fixed start state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunRecord {
    pub start_state: usize,
    /// States seen along the run, including the start state.
    pub visited_states: std::collections::BTreeSet<usize>,
    /// True iff every letter had a defined transition.
    pub accepted: bool,
}

impl PartialDfa {
    pub fn new(state_count: usize) -> Self {
        assert!(state_count <= 64, "subset simulation uses a 64-bit state mask");
        PartialDfa { transitions: vec![[None; 2]; state_count] }
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    /// Adds the transition `from --letter--> to`. Panics if either state is
    /// out of range or the (state, letter) slot is already defined, which
    /// would break determinism.
    pub fn add_transition(&mut self, from: usize, letter: u8, to: usize) {
        assert!(letter <= 1);
        assert!(from < self.state_count() && to < self.state_count());
        let slot = &mut self.transitions[from][letter as usize];
        assert!(slot.is_none(), "duplicate transition from state {from} on {letter}");
        *slot = Some(to);
    }

    pub fn transition(&self, from: usize, letter: u8) -> Option<usize> {
        self.transitions[from][letter as usize]
    }

    /// Subset simulation from the full state set: the word is recognized
    /// iff the set of surviving states never empties.
    pub fn recognizes(&self, w: &Word) -> bool {
        let full = if self.state_count() == 64 {
            u64::MAX
        } else {
            (1u64 << self.state_count()) - 1
        };
        let mut alive = full;
        for &letter in w.letters() {
            let mut next = 0u64;
            let mut rest = alive;
            while rest != 0 {
                let state = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if let Some(to) = self.transitions[state][letter as usize] {
                    next |= 1 << to;
                }
            }
            if next == 0 {
                return false;
            }
            alive = next;
        }
        true
    }

    /// Runs `w` from the single start state, recording the path.
    pub fn run_from(&self, start: usize, w: &Word) -> RunRecord {
        let mut visited = std::collections::BTreeSet::new();
        visited.insert(start);
        let mut state = start;
        for &letter in w.letters() {
            match self.transitions[state][letter as usize] {
                Some(to) => {
                    state = to;
                    visited.insert(to);
                }
                None => {
                    return RunRecord { start_state: start, visited_states: visited, accepted: false }
                }
            }
        }
        RunRecord { start_state: start, visited_states: visited, accepted: true }
    }

    /// All successful runs of `w`, one per admitting start state.
    pub fn accepting_runs(&self, w: &Word) -> Vec<RunRecord> {
        (0..self.state_count())
            .map(|start| self.run_from(start, w))
            .filter(|record| record.accepted)
            .collect()
    }
}

/// States of the diagonal automaton.
pub mod diagonal_states {
    pub const D1: usize = 0;
    pub const D2: usize = 1;
    pub const D3: usize = 2;
}

/// States of the non-oscillating diagonal automaton: U1..U4 track runs that
/// stay weakly above the diagonal, L1..L4 runs weakly below it.
pub mod non_oscillating_states {
    pub const U1: usize = 0;
    pub const U2: usize = 1;
    pub const U3: usize = 2;
    pub const U4: usize = 3;
    pub const L1: usize = 4;
    pub const L2: usize = 5;
    pub const L3: usize = 6;
    pub const L4: usize = 7;
}

static DIAGONAL: LazyLock<PartialDfa> = LazyLock::new(|| {
    use diagonal_states::*;
    let mut dfa = PartialDfa::new(3);
    dfa.add_transition(D1, 0, D2);
    dfa.add_transition(D2, 1, D1);
    dfa.add_transition(D2, 0, D3);
    dfa.add_transition(D3, 1, D2);
    dfa
});

static NON_OSCILLATING: LazyLock<PartialDfa> = LazyLock::new(|| {
    use non_oscillating_states::*;
    let mut dfa = PartialDfa::new(8);
    dfa.add_transition(L1, 0, U1);
    dfa.add_transition(U1, 1, L1);
    dfa.add_transition(U1, 0, U2);
    dfa.add_transition(U2, 1, U3);
    dfa.add_transition(U3, 0, U2);
    dfa.add_transition(U3, 1, U4);
    dfa.add_transition(U4, 0, L4);
    dfa.add_transition(L4, 1, U4);
    dfa.add_transition(L1, 1, L2);
    dfa.add_transition(L2, 0, L3);
    dfa.add_transition(L3, 1, L2);
    dfa.add_transition(L3, 0, L4);
    dfa
});

/// The three-state diagonal automaton.
pub fn diagonal() -> &'static PartialDfa {
    &DIAGONAL
}

/// The eight-state non-oscillating diagonal automaton.
pub fn non_oscillating() -> &'static PartialDfa {
    &NON_OSCILLATING
}

/// True iff `w` is recognized by the diagonal automaton.
pub fn is_diagonal(w: &Word) -> bool {
    diagonal().recognizes(w)
}

/// True iff some successful run of the diagonal automaton on `w` visits at
/// most two states. The thin words are exactly the alternating ones.
pub fn is_thin_diagonal(w: &Word) -> bool {
    diagonal()
        .accepting_runs(w)
        .iter()
        .any(|record| record.visited_states.len() <= 2)
}

/// True iff `w` is recognized by the non-oscillating diagonal automaton.
pub fn is_non_oscillating_diagonal(w: &Word) -> bool {
    non_oscillating().recognizes(w)
}
