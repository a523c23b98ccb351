use std::collections::HashSet;
use std::fmt::Write;

use crate::engine::{Engine, FamilyRef};
use crate::error::Result;
use crate::node::NodeRef;

impl Engine {
    /// Graphviz rendering of a family: boxes for the terminals, circles
    /// labeled with variable names, dashed LO edges and solid HI edges.
    pub fn to_dot(&self, f: FamilyRef) -> Result<String> {
        let root = self.check(f)?;
        let mut out = String::from("digraph zdd {\n");
        let mut seen = HashSet::new();
        let mut stack = vec![root];
        let mut order = Vec::new();
        while let Some(r) = stack.pop() {
            if !seen.insert(r) {
                continue;
            }
            order.push(r);
            if !r.is_terminal() {
                stack.push(self.lo(r));
                stack.push(self.hi(r));
            }
        }
        order.sort();
        for &r in &order {
            let _ = match r {
                NodeRef::BOT => writeln!(out, "  n0 [shape=box,label=\"⊥\"];"),
                NodeRef::TOP => writeln!(out, "  n1 [shape=box,label=\"⊤\"];"),
                _ => writeln!(
                    out,
                    "  n{} [shape=circle,label=\"{}\"];",
                    r.0,
                    self.var_name(self.var(r)).replace('"', "\\\"")
                ),
            };
        }
        for &r in order.iter().filter(|r| !r.is_terminal()) {
            let _ = writeln!(out, "  n{} -> n{} [style=dashed];", r.0, self.lo(r).0);
            let _ = writeln!(out, "  n{} -> n{};", r.0, self.hi(r).0);
        }
        out.push_str("}\n");
        Ok(out)
    }
}
