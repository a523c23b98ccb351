use std::collections::HashMap;

use crate::engine::{Engine, FamilyRef};
use crate::error::{Result, ZddError};
use crate::node::{NodeRef, Var};

impl Engine {
    /// Exchanges `x` and `y` in every member set, for each pair.
    ///
    /// Pairs must be disjoint. The result is rebuilt bottom-up, since
    /// exchanging variables can move them across levels of the order.
    pub fn rename_by_pairs(&mut self, f: FamilyRef, pairs: &[(Var, Var)]) -> Result<FamilyRef> {
        let root = self.check(f)?;
        let mut image: Vec<Var> = (0..=self.num_vars()).collect();
        let mut touched = vec![false; image.len()];
        for &(x, y) in pairs {
            self.check_var(x)?;
            self.check_var(y)?;
            if x == y {
                return Err(ZddError::DegeneratePair(x));
            }
            for v in [x, y] {
                if std::mem::replace(&mut touched[v as usize], true) {
                    return Err(ZddError::OverlappingPairs(v));
                }
            }
            image[x as usize] = y;
            image[y as usize] = x;
        }
        if pairs.is_empty() {
            return Ok(f);
        }
        let r = self.relabel(root, &image);
        Ok(self.wrap(r))
    }

    /// Applies a variable bijection: `perm[i]` is the new name of variable
    /// `i + 1`.
    pub fn permute(&mut self, f: FamilyRef, perm: &[Var]) -> Result<FamilyRef> {
        let root = self.check(f)?;
        let n = self.num_vars();
        if perm.len() != n as usize {
            return Err(ZddError::InvalidPermutation(n));
        }
        let mut hit = vec![false; n as usize + 1];
        for &v in perm {
            if v == 0 || v > n || std::mem::replace(&mut hit[v as usize], true) {
                return Err(ZddError::InvalidPermutation(n));
            }
        }
        let mut image = Vec::with_capacity(perm.len() + 1);
        image.push(0);
        image.extend_from_slice(perm);
        let r = self.relabel(root, &image);
        Ok(self.wrap(r))
    }

    fn relabel(&mut self, root: NodeRef, image: &[Var]) -> NodeRef {
        let mut memo = HashMap::new();
        self.relabel_rec(root, image, &mut memo)
    }

    fn relabel_rec(
        &mut self,
        f: NodeRef,
        image: &[Var],
        memo: &mut HashMap<NodeRef, NodeRef>,
    ) -> NodeRef {
        if f.is_terminal() {
            return f;
        }
        if let Some(&r) = memo.get(&f) {
            return r;
        }
        let (v, hi, lo) = (self.var(f), self.hi(f), self.lo(f));
        let hi = self.relabel_rec(hi, image, memo);
        let lo = self.relabel_rec(lo, image, memo);
        // hi's sets never hold v, so after renaming they never hold image[v]
        let elem = self.mk(image[v as usize], NodeRef::TOP, NodeRef::BOT);
        let hi = self.join_rec(hi, elem);
        let r = self.union_rec(lo, hi);
        memo.insert(f, r);
        r
    }
}
