//! Family algebra over canonical diagrams.
//!
//! Every binary operation recurses on the smaller top variable of its
//! operands and memoizes results in the engine-wide operation cache.
//! Commutative operations normalize their operand order before the lookup.

use std::cmp::Ordering;

use crate::engine::{Engine, FamilyRef, Op};
use crate::error::{Result, ZddError};
use crate::node::NodeRef;

const BOT: NodeRef = NodeRef::BOT;
const TOP: NodeRef = NodeRef::TOP;

impl Engine {
    /// `{α | α ∈ f or α ∈ g}`
    pub fn union(&mut self, f: FamilyRef, g: FamilyRef) -> Result<FamilyRef> {
        let (f, g) = (self.check(f)?, self.check(g)?);
        let r = self.union_rec(f, g);
        Ok(self.wrap(r))
    }

    /// `{α | α ∈ f and α ∈ g}`
    pub fn intersection(&mut self, f: FamilyRef, g: FamilyRef) -> Result<FamilyRef> {
        let (f, g) = (self.check(f)?, self.check(g)?);
        let r = self.intersection_rec(f, g);
        Ok(self.wrap(r))
    }

    /// `{α ∈ f | α ∉ g}`
    pub fn difference(&mut self, f: FamilyRef, g: FamilyRef) -> Result<FamilyRef> {
        let (f, g) = (self.check(f)?, self.check(g)?);
        let r = self.difference_rec(f, g);
        Ok(self.wrap(r))
    }

    /// `{α ∪ β | α ∈ f, β ∈ g}`
    pub fn join(&mut self, f: FamilyRef, g: FamilyRef) -> Result<FamilyRef> {
        let (f, g) = (self.check(f)?, self.check(g)?);
        let r = self.join_rec(f, g);
        Ok(self.wrap(r))
    }

    /// `{α ∩ β | α ∈ f, β ∈ g}`
    pub fn meet(&mut self, f: FamilyRef, g: FamilyRef) -> Result<FamilyRef> {
        let (f, g) = (self.check(f)?, self.check(g)?);
        let r = self.meet_rec(f, g);
        Ok(self.wrap(r))
    }

    /// Members of `f` that contain no member of `g`.
    pub fn nonsupersets(&mut self, f: FamilyRef, g: FamilyRef) -> Result<FamilyRef> {
        let (f, g) = (self.check(f)?, self.check(g)?);
        let r = self.nonsupersets_rec(f, g);
        Ok(self.wrap(r))
    }

    /// All `k`-element unions of distinct members of `f`, where `f` must be a
    /// union of elementary families `{{x}}`.
    pub fn choose(&mut self, f: FamilyRef, k: u32) -> Result<FamilyRef> {
        let f = self.check(f)?;
        if !self.is_singletons(f) {
            return Err(ZddError::NotSingletons);
        }
        let r = self.choose_rec(f, k);
        Ok(self.wrap(r))
    }

    /// A singleton family is a LO-chain whose HI edges all reach TOP and
    /// whose chain ends in BOT.
    fn is_singletons(&self, mut f: NodeRef) -> bool {
        while !f.is_terminal() {
            if self.hi(f) != TOP {
                return false;
            }
            f = self.lo(f);
        }
        f == BOT
    }

    pub(crate) fn union_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        if f == BOT {
            return g;
        }
        if g == BOT || f == g {
            return f;
        }
        let (f, g) = if f < g { (f, g) } else { (g, f) };
        let key = (Op::Union, f, g, 0);
        if let Some(&r) = self.cache.get(&key) {
            return r;
        }
        let (fv, gv) = (self.var(f), self.var(g));
        let r = match fv.cmp(&gv) {
            Ordering::Less => {
                let (fh, fl) = (self.hi(f), self.lo(f));
                let lo = self.union_rec(fl, g);
                self.mk(fv, fh, lo)
            }
            Ordering::Greater => {
                let (gh, gl) = (self.hi(g), self.lo(g));
                let lo = self.union_rec(f, gl);
                self.mk(gv, gh, lo)
            }
            Ordering::Equal => {
                let hi = self.union_rec(self.hi(f), self.hi(g));
                let lo = self.union_rec(self.lo(f), self.lo(g));
                self.mk(fv, hi, lo)
            }
        };
        self.cache.insert(key, r);
        r
    }

    pub(crate) fn intersection_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        if f == BOT || g == BOT {
            return BOT;
        }
        if f == g {
            return f;
        }
        let (f, g) = if f < g { (f, g) } else { (g, f) };
        let key = (Op::Intersection, f, g, 0);
        if let Some(&r) = self.cache.get(&key) {
            return r;
        }
        let (fv, gv) = (self.var(f), self.var(g));
        let r = match fv.cmp(&gv) {
            Ordering::Less => self.intersection_rec(self.lo(f), g),
            Ordering::Greater => self.intersection_rec(f, self.lo(g)),
            Ordering::Equal => {
                let hi = self.intersection_rec(self.hi(f), self.hi(g));
                let lo = self.intersection_rec(self.lo(f), self.lo(g));
                self.mk(fv, hi, lo)
            }
        };
        self.cache.insert(key, r);
        r
    }

    pub(crate) fn difference_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        if f == BOT || f == g {
            return BOT;
        }
        if g == BOT {
            return f;
        }
        let key = (Op::Difference, f, g, 0);
        if let Some(&r) = self.cache.get(&key) {
            return r;
        }
        let (fv, gv) = (self.var(f), self.var(g));
        let r = match fv.cmp(&gv) {
            Ordering::Less => {
                let (fh, fl) = (self.hi(f), self.lo(f));
                let lo = self.difference_rec(fl, g);
                self.mk(fv, fh, lo)
            }
            Ordering::Greater => self.difference_rec(f, self.lo(g)),
            Ordering::Equal => {
                let hi = self.difference_rec(self.hi(f), self.hi(g));
                let lo = self.difference_rec(self.lo(f), self.lo(g));
                self.mk(fv, hi, lo)
            }
        };
        self.cache.insert(key, r);
        r
    }

    pub(crate) fn join_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        if f == BOT || g == BOT {
            return BOT;
        }
        if f == TOP {
            return g;
        }
        if g == TOP {
            return f;
        }
        let (f, g) = if f < g { (f, g) } else { (g, f) };
        let key = (Op::Join, f, g, 0);
        if let Some(&r) = self.cache.get(&key) {
            return r;
        }
        let (fv, gv) = (self.var(f), self.var(g));
        // Split on the smaller top variable; the other operand is untouched.
        let (top, outer, inner) = match fv.cmp(&gv) {
            Ordering::Less => (fv, f, g),
            Ordering::Greater => (gv, g, f),
            Ordering::Equal => (fv, f, g),
        };
        let r = if fv == gv {
            let (fh, fl, gh, gl) = (self.hi(f), self.lo(f), self.hi(g), self.lo(g));
            let hh = self.join_rec(fh, gh);
            let hl = self.join_rec(fh, gl);
            let lh = self.join_rec(fl, gh);
            let hi = self.union_rec(hl, lh);
            let hi = self.union_rec(hh, hi);
            let lo = self.join_rec(fl, gl);
            self.mk(top, hi, lo)
        } else {
            let (oh, ol) = (self.hi(outer), self.lo(outer));
            let hi = self.join_rec(oh, inner);
            let lo = self.join_rec(ol, inner);
            self.mk(top, hi, lo)
        };
        self.cache.insert(key, r);
        r
    }

    pub(crate) fn meet_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        if f == BOT || g == BOT {
            return BOT;
        }
        if f == TOP || g == TOP {
            return TOP;
        }
        let (f, g) = if f < g { (f, g) } else { (g, f) };
        let key = (Op::Meet, f, g, 0);
        if let Some(&r) = self.cache.get(&key) {
            return r;
        }
        let (fv, gv) = (self.var(f), self.var(g));
        let r = match fv.cmp(&gv) {
            // The smaller variable never survives the intersection.
            Ordering::Less => {
                let a = self.meet_rec(self.hi(f), g);
                let b = self.meet_rec(self.lo(f), g);
                self.union_rec(a, b)
            }
            Ordering::Greater => {
                let a = self.meet_rec(f, self.hi(g));
                let b = self.meet_rec(f, self.lo(g));
                self.union_rec(a, b)
            }
            Ordering::Equal => {
                let (fh, fl, gh, gl) = (self.hi(f), self.lo(f), self.hi(g), self.lo(g));
                let hi = self.meet_rec(fh, gh);
                let hl = self.meet_rec(fh, gl);
                let lh = self.meet_rec(fl, gh);
                let ll = self.meet_rec(fl, gl);
                let lo = self.union_rec(hl, lh);
                let lo = self.union_rec(lo, ll);
                self.mk(fv, hi, lo)
            }
        };
        self.cache.insert(key, r);
        r
    }

    pub(crate) fn nonsupersets_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        if g == BOT {
            return f;
        }
        if f == BOT || g == TOP || f == g {
            return BOT;
        }
        let key = (Op::NonSupersets, f, g, 0);
        if let Some(&r) = self.cache.get(&key) {
            return r;
        }
        let (fv, gv) = (self.var(f), self.var(g));
        let r = match fv.cmp(&gv) {
            // Members of hi(g) hold a variable no member of f can contain.
            Ordering::Greater => self.nonsupersets_rec(f, self.lo(g)),
            Ordering::Less => {
                let (fh, fl) = (self.hi(f), self.lo(f));
                let hi = self.nonsupersets_rec(fh, g);
                let lo = self.nonsupersets_rec(fl, g);
                self.mk(fv, hi, lo)
            }
            Ordering::Equal => {
                let (fh, fl, gh, gl) = (self.hi(f), self.lo(f), self.hi(g), self.lo(g));
                let hi = self.nonsupersets_rec(fh, gl);
                let hi = self.nonsupersets_rec(hi, gh);
                let lo = self.nonsupersets_rec(fl, gl);
                self.mk(fv, hi, lo)
            }
        };
        self.cache.insert(key, r);
        r
    }

    /// Recursion down the LO chain of a singleton family.
    fn choose_rec(&mut self, f: NodeRef, k: u32) -> NodeRef {
        if k == 1 {
            return f;
        }
        if f == BOT {
            return if k > 0 { BOT } else { TOP };
        }
        let key = (Op::Choose, f, BOT, k);
        if let Some(&r) = self.cache.get(&key) {
            return r;
        }
        let (fv, fl) = (self.var(f), self.lo(f));
        let mut r = self.choose_rec(fl, k);
        if k > 0 {
            let q = self.choose_rec(fl, k - 1);
            r = self.mk(fv, q, r);
        }
        self.cache.insert(key, r);
        r
    }
}
