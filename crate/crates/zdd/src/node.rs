/// Variable index. Valid variables of an engine are `1..=num_vars`; smaller
/// indices come first in the diagram order.
pub type Var = u32;

/// Level used for the two terminals so that every variable precedes them.
pub(crate) const TERMINAL_VAR: Var = Var::MAX;

/// Handle into an engine's node arena.
///
/// The two terminals live at fixed slots: [`NodeRef::BOT`] (the empty family)
/// at 0 and [`NodeRef::TOP`] (the unit family `{∅}`) at 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NodeRef(pub(crate) u32);

impl NodeRef {
    pub const BOT: NodeRef = NodeRef(0);
    pub const TOP: NodeRef = NodeRef(1);

    #[inline]
    pub fn is_terminal(self) -> bool {
        self.0 < 2
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A stored node. Terminals carry [`TERMINAL_VAR`] and point at themselves.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Node {
    pub var: Var,
    pub hi: NodeRef,
    pub lo: NodeRef,
}

impl Node {
    pub(crate) const fn terminal(r: NodeRef) -> Self {
        Node {
            var: TERMINAL_VAR,
            hi: r,
            lo: r,
        }
    }
}
