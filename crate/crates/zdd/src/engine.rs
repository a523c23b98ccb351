use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Result, ZddError};
use crate::node::{Node, NodeRef, Var, TERMINAL_VAR};

static NEXT_ENGINE_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct EngineId(u64);

/// A family of sets held by one [`Engine`].
///
/// Handles are plain values. Two handles from the same engine are equal
/// exactly when they denote the same family.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FamilyRef {
    root: NodeRef,
    engine: EngineId,
}

impl FamilyRef {
    pub fn root(self) -> NodeRef {
        self.root
    }

    pub fn engine(self) -> EngineId {
        self.engine
    }

    /// True for the empty family `∅`.
    pub fn is_empty(self) -> bool {
        self.root == NodeRef::BOT
    }

    /// True for the unit family `{∅}`.
    pub fn is_unit(self) -> bool {
        self.root == NodeRef::TOP
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) enum Op {
    Union,
    Intersection,
    Difference,
    Join,
    Meet,
    NonSupersets,
    Choose,
}

pub(crate) type CacheKey = (Op, NodeRef, NodeRef, u32);

/// Node store with a unique table and an operation cache.
///
/// Every node ever created stays in the arena until the engine is dropped;
/// there is no garbage collection. All operations take `&mut self`, so an
/// engine is used by one thread at a time but can be moved between threads.
pub struct Engine {
    id: EngineId,
    num_vars: u32,
    pub(crate) nodes: Vec<Node>,
    unique: HashMap<Node, NodeRef>,
    pub(crate) cache: HashMap<CacheKey, NodeRef>,
    names: Vec<String>,
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine")
            .field("id", &self.id)
            .field("num_vars", &self.num_vars)
            .field("nodes", &self.nodes.len())
            .field("cache", &self.cache.len())
            .finish()
    }
}

impl Engine {
    /// Creates an engine over the universe `{x_1, ..., x_num_vars}`.
    pub fn new(num_vars: u32) -> Self {
        assert!(num_vars < TERMINAL_VAR, "universe too large");
        Engine {
            id: EngineId(NEXT_ENGINE_ID.fetch_add(1, Ordering::Relaxed)),
            num_vars,
            nodes: vec![Node::terminal(NodeRef::BOT), Node::terminal(NodeRef::TOP)],
            unique: HashMap::new(),
            cache: HashMap::new(),
            names: Vec::new(),
        }
    }

    pub fn id(&self) -> EngineId {
        self.id
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    /// Number of slots in the arena, terminals included.
    pub fn arena_len(&self) -> usize {
        self.nodes.len()
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    /// Attaches display names to variables, used by the DOT export.
    /// `names[i]` labels variable `i + 1`.
    pub fn set_var_names(&mut self, names: Vec<String>) {
        self.names = names;
    }

    pub fn var_name(&self, var: Var) -> String {
        match self.names.get((var as usize).wrapping_sub(1)) {
            Some(n) => n.clone(),
            None => format!("x{var}"),
        }
    }

    pub fn empty(&self) -> FamilyRef {
        self.wrap(NodeRef::BOT)
    }

    pub fn unit(&self) -> FamilyRef {
        self.wrap(NodeRef::TOP)
    }

    pub(crate) fn wrap(&self, root: NodeRef) -> FamilyRef {
        FamilyRef {
            root,
            engine: self.id,
        }
    }

    /// Wraps an existing node of this engine as a family handle.
    pub fn family(&self, root: NodeRef) -> Result<FamilyRef> {
        self.check_ref(root)?;
        Ok(self.wrap(root))
    }

    pub(crate) fn check(&self, f: FamilyRef) -> Result<NodeRef> {
        if f.engine != self.id {
            return Err(ZddError::ForeignFamily);
        }
        Ok(f.root)
    }

    fn check_ref(&self, r: NodeRef) -> Result<()> {
        if r.index() < self.nodes.len() {
            Ok(())
        } else {
            Err(ZddError::InvalidNodeRef(r.0))
        }
    }

    pub(crate) fn check_var(&self, var: Var) -> Result<()> {
        if var == 0 || var > self.num_vars {
            Err(ZddError::VarOutOfRange {
                var,
                num_vars: self.num_vars,
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub(crate) fn var(&self, r: NodeRef) -> Var {
        self.nodes[r.index()].var
    }

    #[inline]
    pub(crate) fn hi(&self, r: NodeRef) -> NodeRef {
        self.nodes[r.index()].hi
    }

    #[inline]
    pub(crate) fn lo(&self, r: NodeRef) -> NodeRef {
        self.nodes[r.index()].lo
    }

    /// `(var, hi, lo)` of a nonterminal, `None` for terminals.
    pub fn node(&self, r: NodeRef) -> Option<(Var, NodeRef, NodeRef)> {
        if r.is_terminal() {
            return None;
        }
        self.nodes.get(r.index()).map(|n| (n.var, n.hi, n.lo))
    }

    /// Returns the canonical node for `(var, hi, lo)`, applying the
    /// zero-suppression rule. Callers guarantee ordering.
    pub(crate) fn mk(&mut self, var: Var, hi: NodeRef, lo: NodeRef) -> NodeRef {
        if hi == NodeRef::BOT {
            return lo;
        }
        debug_assert!(var < self.var(hi) && var < self.var(lo));
        let node = Node { var, hi, lo };
        if let Some(&r) = self.unique.get(&node) {
            return r;
        }
        let r = NodeRef(self.nodes.len() as u32);
        self.nodes.push(node);
        self.unique.insert(node, r);
        r
    }

    /// Checked node constructor.
    pub fn make_node(&mut self, var: Var, hi: NodeRef, lo: NodeRef) -> Result<NodeRef> {
        self.check_var(var)?;
        self.check_ref(hi)?;
        self.check_ref(lo)?;
        for child in [hi, lo] {
            let cv = self.var(child);
            if cv <= var {
                return Err(ZddError::OrderViolation { var, child: cv });
            }
        }
        Ok(self.mk(var, hi, lo))
    }

    /// The elementary family `{{x}}`.
    pub fn elementary(&mut self, x: Var) -> Result<FamilyRef> {
        self.check_var(x)?;
        let r = self.mk(x, NodeRef::TOP, NodeRef::BOT);
        Ok(self.wrap(r))
    }

    /// The family of all `2^n` subsets of the universe.
    pub fn universal(&mut self) -> FamilyRef {
        let mut r = NodeRef::TOP;
        for v in (1..=self.num_vars).rev() {
            r = self.mk(v, r, r);
        }
        self.wrap(r)
    }

    /// The family holding exactly one set.
    pub fn singleton_set<I>(&mut self, set: I) -> Result<FamilyRef>
    where
        I: IntoIterator<Item = Var>,
    {
        let mut vars: Vec<Var> = set.into_iter().collect();
        for &v in &vars {
            self.check_var(v)?;
        }
        vars.sort_unstable();
        vars.dedup();
        let mut r = NodeRef::TOP;
        for &v in vars.iter().rev() {
            r = self.mk(v, r, NodeRef::BOT);
        }
        Ok(self.wrap(r))
    }

    /// Builds a family from explicit member sets.
    pub fn from_sets<S, I>(&mut self, sets: S) -> Result<FamilyRef>
    where
        S: IntoIterator<Item = I>,
        I: IntoIterator<Item = Var>,
    {
        let mut acc = NodeRef::BOT;
        for set in sets {
            let s = self.singleton_set(set)?.root;
            acc = self.union_rec(acc, s);
        }
        Ok(self.wrap(acc))
    }

    /// Scans the whole arena for zero-suppression, ordering and uniqueness
    /// violations. Returns the first offending node.
    pub fn audit(&self) -> std::result::Result<(), String> {
        let mut seen = HashSet::with_capacity(self.nodes.len());
        for (i, n) in self.nodes.iter().enumerate().skip(2) {
            if n.hi == NodeRef::BOT {
                return Err(format!("node {i} has hi = BOT"));
            }
            if n.var == 0 || n.var > self.num_vars {
                return Err(format!("node {i} has variable {} out of range", n.var));
            }
            if self.var(n.hi) <= n.var || self.var(n.lo) <= n.var {
                return Err(format!("node {i} violates the variable order"));
            }
            if n.hi.index() >= i || n.lo.index() >= i {
                return Err(format!("node {i} points forward in the arena"));
            }
            if !seen.insert((n.var, n.hi, n.lo)) {
                return Err(format!("node {i} duplicates an earlier triple"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_suppression_returns_lo() {
        let mut e = Engine::new(4);
        let r = e.elementary(4).unwrap().root();
        assert_eq!(e.make_node(3, NodeRef::BOT, r).unwrap(), r);
    }

    #[test]
    fn hash_consing_reuses_nodes() {
        let mut e = Engine::new(2);
        let a = e.make_node(1, NodeRef::TOP, NodeRef::BOT).unwrap();
        let b = e.make_node(1, NodeRef::TOP, NodeRef::BOT).unwrap();
        assert_eq!(a, b);
        assert_eq!(e.arena_len(), 3);
    }

    #[test]
    fn make_node_rejects_order_violation() {
        let mut e = Engine::new(3);
        let x2 = e.elementary(2).unwrap().root();
        assert_eq!(
            e.make_node(2, x2, NodeRef::BOT),
            Err(ZddError::OrderViolation { var: 2, child: 2 })
        );
        assert_eq!(
            e.make_node(3, NodeRef::TOP, x2),
            Err(ZddError::OrderViolation { var: 3, child: 2 })
        );
        assert!(matches!(
            e.make_node(4, NodeRef::TOP, NodeRef::BOT),
            Err(ZddError::VarOutOfRange { .. })
        ));
        assert_eq!(
            e.make_node(1, NodeRef(99), NodeRef::BOT),
            Err(ZddError::InvalidNodeRef(99))
        );
    }

    #[test]
    fn elementary_out_of_universe() {
        let mut e = Engine::new(2);
        assert!(e.elementary(0).is_err());
        assert!(e.elementary(3).is_err());
    }

    #[test]
    fn universal_of_empty_universe_is_top() {
        let mut e = Engine::new(0);
        assert!(e.universal().is_unit());
    }

    #[test]
    fn foreign_handles_are_rejected() {
        let mut a = Engine::new(2);
        let mut b = Engine::new(2);
        let fa = a.elementary(1).unwrap();
        let fb = b.elementary(1).unwrap();
        assert_eq!(a.union(fa, fb), Err(ZddError::ForeignFamily));
        assert_eq!(b.count_sets(fa), Err(ZddError::ForeignFamily));
    }

    #[test]
    fn engines_move_between_threads() {
        fn assert_send<T: Send>() {}
        assert_send::<Engine>();
        let mut e = Engine::new(3);
        let f = e.universal();
        let n = std::thread::spawn(move || e.count_sets(f).unwrap()).join().unwrap();
        assert_eq!(n, 8u32.into());
    }
}
