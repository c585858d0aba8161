//! Disjoint-set forest whose block representative is always the least member.

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the blocks of `i` and `j`; the smaller root wins.
    pub fn union(&mut self, i: usize, j: usize) -> bool {
        let a = self.find(i);
        let b = self.find(j);
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo;
        true
    }

    /// Blocks ordered by representative, each listing its members in
    /// increasing order, together with the block index of every element.
    pub fn blocks(&mut self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let n = self.parent.len();
        let mut block_of_root = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![0; n];
        for i in 0..n {
            let r = self.find(i);
            if block_of_root[r] == usize::MAX {
                block_of_root[r] = blocks.len();
                blocks.push(Vec::new());
            }
            let b = block_of_root[r];
            blocks[b].push(i);
            block_of[i] = b;
        }
        (blocks, block_of)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_element_represents_block() {
        let mut uf = UnionFind::new(5);
        uf.union(4, 2);
        uf.union(2, 3);
        assert_eq!(uf.find(4), 2);
        uf.union(3, 0);
        assert_eq!(uf.find(4), 0);
        let (blocks, block_of) = uf.blocks();
        assert_eq!(blocks, vec![vec![0, 2, 3, 4], vec![1]]);
        assert_eq!(block_of, vec![0, 1, 0, 0, 0]);
    }
}
