//! Knuth's dancing links over a flat node pool. Node 0 is the root header,
//! nodes `1..=n_cols` are column headers, the rest are matrix entries.

pub(super) struct DancingLinks {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    col: Vec<usize>,
    row: Vec<usize>,
    size: Vec<usize>,
}

impl DancingLinks {
    pub(super) fn new(n_cols: usize, rows: &[Vec<usize>]) -> Self {
        let n_nodes = 1 + n_cols + rows.iter().map(Vec::len).sum::<usize>();
        let mut dl = Self {
            left: Vec::with_capacity(n_nodes),
            right: Vec::with_capacity(n_nodes),
            up: Vec::with_capacity(n_nodes),
            down: Vec::with_capacity(n_nodes),
            col: Vec::with_capacity(n_nodes),
            row: Vec::with_capacity(n_nodes),
            size: vec![0; n_cols + 1],
        };
        for i in 0..=n_cols {
            dl.left.push(if i == 0 { n_cols } else { i - 1 });
            dl.right.push(if i == n_cols { 0 } else { i + 1 });
            dl.up.push(i);
            dl.down.push(i);
            dl.col.push(i);
            dl.row.push(usize::MAX);
        }
        for (r, cols) in rows.iter().enumerate() {
            let first = dl.col.len();
            for (k, &c) in cols.iter().enumerate() {
                let header = c + 1;
                let node = dl.col.len();
                let last = if k + 1 == cols.len() { first } else { node + 1 };
                let prev = if k == 0 { first + cols.len() - 1 } else { node - 1 };
                dl.left.push(prev);
                dl.right.push(last);
                dl.up.push(dl.up[header]);
                dl.down.push(header);
                dl.col.push(header);
                dl.row.push(r);
                let above = dl.up[header];
                dl.down[above] = node;
                dl.up[header] = node;
                dl.size[header] += 1;
            }
        }
        dl
    }

    fn cover(&mut self, c: usize) {
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                self.size[self.col[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                self.size[self.col[j]] += 1;
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = c;
        self.left[r] = c;
    }

    pub(super) fn solve_all(&mut self) -> Vec<Vec<usize>> {
        let mut partial = Vec::new();
        let mut found = Vec::new();
        self.search(&mut partial, &mut found);
        found
    }

    fn search(&mut self, partial: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
        if self.right[0] == 0 {
            found.push(partial.clone());
            return;
        }
        // smallest column first
        let mut c = self.right[0];
        let mut j = self.right[c];
        while j != 0 {
            if self.size[j] < self.size[c] {
                c = j;
            }
            j = self.right[j];
        }
        if self.size[c] == 0 {
            return;
        }
        self.cover(c);
        let mut r = self.down[c];
        while r != c {
            partial.push(self.row[r]);
            let mut j = self.right[r];
            while j != r {
                self.cover(self.col[j]);
                j = self.right[j];
            }
            self.search(partial, found);
            let mut j = self.left[r];
            while j != r {
                self.uncover(self.col[j]);
                j = self.left[j];
            }
            partial.pop();
            r = self.down[r];
        }
        self.uncover(c);
    }
}
