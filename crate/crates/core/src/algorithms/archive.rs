use crate::domain::{ObjectiveVector, Solution};

/// One archive entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub objectives: ObjectiveVector,
    pub solution: Solution,
}

/// Result of offering a candidate to the archive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct InsertOutcome {
    pub accepted: bool,
    /// Members removed because the candidate weakly dominated them.
    pub removed: usize,
    /// One of the removed members had the candidate's objective vector.
    pub replaced_equal: bool,
}

/// Acceptance rule applied on insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcceptRule {
    /// Reject only when some member strictly dominates the candidate; equal
    /// members are replaced by the candidate.
    NotStrictlyDominated,
    /// Reject when some member weakly dominates the candidate.
    NotWeaklyDominated,
}

/// Mutually non-dominated population sorted by `f1` ascending.
///
/// Pairwise non-domination for two maximized objectives means `f1` strictly
/// increases while `f2` strictly decreases along the members, so a candidate
/// only has to be compared with the first member whose `f1` is not smaller
/// than its own, and the members it dominates form one contiguous run just
/// before that position.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Archive {
    members: Vec<Member>,
}

impl Archive {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(solution: Solution, objectives: ObjectiveVector) -> Self {
        Self {
            members: vec![Member {
                objectives,
                solution,
            }],
        }
    }

    #[inline]
    pub fn members(&self) -> &[Member] {
        &self.members
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn objectives(&self) -> impl Iterator<Item = ObjectiveVector> + '_ {
        self.members.iter().map(|m| m.objectives)
    }

    /// Member with the given `f1`, if any.
    #[inline]
    pub fn find_f1(&self, f1: u64) -> Option<&Member> {
        self.members
            .binary_search_by_key(&f1, |m| m.objectives.f1)
            .ok()
            .map(|i| &self.members[i])
    }

    /// Member with the largest `f1`.
    #[inline]
    pub fn max_f1_member(&self) -> Option<&Member> {
        self.members.last()
    }

    /// Original SEMO acceptance.
    pub fn insert_semo(&mut self, y: Solution, fy: ObjectiveVector) -> InsertOutcome {
        self.insert(y, fy, AcceptRule::NotStrictlyDominated, &mut Vec::new())
    }

    /// Strict acceptance: equal objective vectors are never replaced.
    pub fn insert_strict(&mut self, y: Solution, fy: ObjectiveVector) -> InsertOutcome {
        self.insert(y, fy, AcceptRule::NotWeaklyDominated, &mut Vec::new())
    }

    /// Whether `rule` would accept a candidate with objective `fy`.
    #[inline]
    pub fn accepts(&self, fy: ObjectiveVector, rule: AcceptRule) -> bool {
        let s = self.members.partition_point(|m| m.objectives.f1 < fy.f1);
        match self.members.get(s) {
            None => true,
            Some(m) if m.objectives.f2 < fy.f2 => true,
            Some(m) => rule == AcceptRule::NotStrictlyDominated && m.objectives == fy,
        }
    }

    /// Offers `y` under `rule`. Solutions of removed members are pushed onto
    /// `spare` so the caller can reuse their buffers; a rejected `y` is
    /// pushed there as well.
    pub fn insert(
        &mut self,
        y: Solution,
        fy: ObjectiveVector,
        rule: AcceptRule,
        spare: &mut Vec<Solution>,
    ) -> InsertOutcome {
        // First member with f1 >= fy.f1; it has the largest f2 among those.
        let s = self.members.partition_point(|m| m.objectives.f1 < fy.f1);
        let mut end = s;
        let mut replaced_equal = false;
        if let Some(m) = self.members.get(s) {
            if m.objectives.f2 >= fy.f2 {
                let equal = m.objectives == fy;
                if !equal || rule == AcceptRule::NotWeaklyDominated {
                    spare.push(y);
                    return InsertOutcome::default();
                }
            }
            // Same f1 and not larger f2: weakly dominated by the candidate.
            if m.objectives.f1 == fy.f1 {
                replaced_equal = m.objectives.f2 == fy.f2;
                end = s + 1;
            }
        }
        // Members before `s` have f1 < fy.f1; those with f2 <= fy.f2 are a suffix.
        let start = self.members[..s].partition_point(|m| m.objectives.f2 > fy.f2);

        let member = Member {
            objectives: fy,
            solution: y,
        };
        let removed = end - start;
        if removed == 0 {
            self.members.insert(start, member);
        } else {
            let old = std::mem::replace(&mut self.members[start], member);
            spare.push(old.solution);
            spare.extend(self.members.drain(start + 1..end).map(|m| m.solution));
        }
        self.debug_check_around(start);
        InsertOutcome {
            accepted: true,
            removed,
            replaced_equal,
        }
    }

    /// Checks the neighbours of a freshly written slot. Together with the
    /// invariant holding before the insertion this covers every pair.
    #[inline]
    fn debug_check_around(&self, at: usize) {
        if cfg!(debug_assertions) {
            let lo = at.saturating_sub(1);
            let hi = (at + 2).min(self.members.len());
            for pair in self.members[lo..hi].windows(2) {
                let (a, b) = (pair[0].objectives, pair[1].objectives);
                debug_assert!(a.f1 < b.f1 && a.f2 > b.f2, "archive order broken: {a} then {b}");
            }
        }
    }

    /// Full O(|P|) invariant check: strictly increasing `f1`, strictly
    /// decreasing `f2`.
    pub fn is_sorted_front(&self) -> bool {
        self.members.windows(2).all(|w| {
            w[0].objectives.f1 < w[1].objectives.f1 && w[0].objectives.f2 > w[1].objectives.f2
        })
    }
}
