use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::engine::{Engine, FamilyRef};
use crate::error::Result;
use crate::node::{NodeRef, Var};

impl Engine {
    /// Exact number of member sets.
    pub fn count_sets(&self, f: FamilyRef) -> Result<BigUint> {
        let f = self.check(f)?;
        let mut memo = HashMap::new();
        Ok(self.count_rec(f, &mut memo))
    }

    fn count_rec(&self, f: NodeRef, memo: &mut HashMap<NodeRef, BigUint>) -> BigUint {
        match f {
            NodeRef::BOT => return BigUint::zero(),
            NodeRef::TOP => return BigUint::one(),
            _ => {}
        }
        if let Some(c) = memo.get(&f) {
            return c.clone();
        }
        let c = self.count_rec(self.hi(f), memo) + self.count_rec(self.lo(f), memo);
        memo.insert(f, c.clone());
        c
    }

    /// Number of distinct reachable nodes, terminals included.
    pub fn node_count(&self, f: FamilyRef) -> Result<usize> {
        let f = self.check(f)?;
        let mut seen = HashSet::new();
        let mut stack = vec![f];
        while let Some(r) = stack.pop() {
            if !seen.insert(r) || r.is_terminal() {
                continue;
            }
            stack.push(self.hi(r));
            stack.push(self.lo(r));
        }
        Ok(seen.len())
    }

    /// Variables occurring in at least one member set, ascending.
    pub fn support(&self, f: FamilyRef) -> Result<Vec<Var>> {
        let f = self.check(f)?;
        let mut seen = HashSet::new();
        let mut vars = BTreeSet::new();
        let mut stack = vec![f];
        while let Some(r) = stack.pop() {
            if r.is_terminal() || !seen.insert(r) {
                continue;
            }
            vars.insert(self.var(r));
            stack.push(self.hi(r));
            stack.push(self.lo(r));
        }
        Ok(vars.into_iter().collect())
    }

    /// Membership test for one set.
    pub fn contains(&self, f: FamilyRef, set: &[Var]) -> Result<bool> {
        let mut r = self.check(f)?;
        let mut vars = set.to_vec();
        vars.sort_unstable();
        vars.dedup();
        let mut it = vars.into_iter().peekable();
        while !r.is_terminal() {
            let v = self.var(r);
            match it.peek() {
                Some(&x) if x == v => {
                    it.next();
                    r = self.hi(r);
                }
                Some(&x) if x < v => return Ok(false),
                _ => r = self.lo(r),
            }
        }
        Ok(r == NodeRef::TOP && it.next().is_none())
    }

    fn has_empty_set(&self, mut r: NodeRef) -> bool {
        while !r.is_terminal() {
            r = self.lo(r);
        }
        r == NodeRef::TOP
    }

    /// Member sets in lexicographic order of their ascending variable lists
    /// (so `∅` comes first when present).
    pub fn enumerate(&self, f: FamilyRef) -> Result<Sets<'_>> {
        let root = self.check(f)?;
        Ok(Sets {
            engine: self,
            stack: vec![Task {
                node: root,
                prefix: Vec::new(),
                with_empty: true,
            }],
        })
    }
}

struct Task {
    node: NodeRef,
    prefix: Vec<Var>,
    with_empty: bool,
}

/// Lazy iterator over the member sets of a family.
pub struct Sets<'a> {
    engine: &'a Engine,
    stack: Vec<Task>,
}

impl Iterator for Sets<'_> {
    type Item = Vec<Var>;

    fn next(&mut self) -> Option<Vec<Var>> {
        while let Some(task) = self.stack.pop() {
            match task.node {
                NodeRef::BOT => continue,
                NodeRef::TOP => {
                    if task.with_empty {
                        return Some(task.prefix);
                    }
                }
                n => {
                    let e = self.engine;
                    // prefix itself, then sets through HI, then the rest of LO
                    self.stack.push(Task {
                        node: e.lo(n),
                        prefix: task.prefix.clone(),
                        with_empty: false,
                    });
                    let mut hi_prefix = task.prefix.clone();
                    hi_prefix.push(e.var(n));
                    self.stack.push(Task {
                        node: e.hi(n),
                        prefix: hi_prefix,
                        with_empty: true,
                    });
                    if task.with_empty && e.has_empty_set(n) {
                        return Some(task.prefix);
                    }
                }
            }
        }
        None
    }
}
