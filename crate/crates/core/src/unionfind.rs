use alloc::vec::Vec;

/// Disjoint-set forest with path halving; reusable through `reset`.
#[derive(Debug, Clone, Default)]
pub(crate) struct UnionFind {
    parent: Vec<u32>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        let mut uf = Self::default();
        uf.reset(n);
        uf
    }

    pub fn reset(&mut self, n: usize) {
        self.parent.clear();
        self.parent.extend(0..n as u32);
        self.sets = n;
    }

    #[inline]
    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = self.parent[x] as usize;
        }
        x
    }

    #[inline]
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if ra < rb {
            self.parent[rb] = ra as u32;
        } else {
            self.parent[ra] = rb as u32;
        }
        self.sets -= 1;
        true
    }

    pub fn sets(&self) -> usize {
        self.sets
    }

    /// Dense relabelling of the roots: `labels[x]` is the set id of `x`,
    /// numbered by first appearance.
    pub fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut id = alloc::vec![usize::MAX; n];
        let mut out = Vec::with_capacity(n);
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            out.push(id[r]);
        }
        (out, next)
    }
}

/// Union by size without path compression, so every union can be undone in
/// LIFO order.
#[derive(Debug, Clone, Default)]
pub(crate) struct RollbackUnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    /// Root attached by each union, or `u32::MAX` for a no-op.
    history: Vec<u32>,
    sets: usize,
}

impl RollbackUnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            size: alloc::vec![1; n],
            history: Vec::new(),
            sets: n,
        }
    }

    #[inline]
    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }

    #[inline]
    pub fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(u32::MAX);
            return;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        self.history.push(rb as u32);
        self.sets -= 1;
    }

    /// Reverts the latest union.
    #[inline]
    pub fn undo(&mut self) {
        let rb = self.history.pop().expect("undo without a union");
        if rb == u32::MAX {
            return;
        }
        let rb = rb as usize;
        let ra = self.parent[rb] as usize;
        self.size[ra] -= self.size[rb];
        self.parent[rb] = rb as u32;
        self.sets += 1;
    }

    pub fn sets(&self) -> usize {
        self.sets
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rollback_restores_sets() {
        let mut uf = RollbackUnionFind::new(4);
        uf.union(0, 1);
        uf.union(1, 0);
        uf.union(2, 3);
        assert_eq!(uf.sets(), 2);
        uf.union(0, 3);
        assert_eq!(uf.sets(), 1);
        for _ in 0..4 {
            uf.undo();
        }
        assert_eq!(uf.sets(), 4);
        assert_ne!(uf.find(0), uf.find(1));
    }
}
