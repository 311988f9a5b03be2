/// Union-find over `0..len` with union by rank and path compression.
#[derive(Clone, Debug)]
pub struct DisjointSet {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl DisjointSet {
    pub fn new(len: usize) -> DisjointSet {
        assert!(len <= u32::MAX as usize, "disjoint set too large");
        DisjointSet {
            parent: (0..len as u32).collect(),
            rank: vec![0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Representative of `x`. Compresses by path halving: every node on the
    /// walk is re-pointed at its grandparent.
    pub fn find(&mut self, x: usize) -> usize {
        let mut cur = x;
        loop {
            let parent = self.parent[cur] as usize;
            if parent == cur {
                return cur;
            }
            let grand = self.parent[parent];
            self.parent[cur] = grand;
            cur = grand as usize;
        }
    }

    /// Representative of `x` without modifying the structure.
    pub fn root(&self, x: usize) -> usize {
        let mut cur = x;
        while self.parent[cur] as usize != cur {
            cur = self.parent[cur] as usize;
        }
        cur
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb as u32,
            std::cmp::Ordering::Greater => self.parent[rb] = ra as u32,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra as u32;
                self.rank[ra] += 1;
            }
        }
    }

    pub fn same_set(&self, a: usize, b: usize) -> bool {
        self.root(a) == self.root(b)
    }
}
