//! Storage of live hyperedges during symbolic elimination.
//!
//! Small and medium graphs use bitsets (edge → vertices and vertex → edges);
//! when those would need too much memory, sorted vertex lists are used
//! instead. Both produce identical results.

use crate::hypergraph::sorted_union;

/// Bitsets are used while both bit matrices together fit in this many bytes.
const BITSET_BUDGET_BYTES: usize = 256 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StoreKind {
    Bits,
    Lists,
}

impl StoreKind {
    pub fn auto(n_vertices: usize, n_edges: usize) -> Self {
        let words = n_edges * n_vertices.div_ceil(64) + n_vertices * n_edges.div_ceil(64);
        if words.saturating_mul(8) <= BITSET_BUDGET_BYTES {
            StoreKind::Bits
        } else {
            StoreKind::Lists
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) enum Store {
    Bits(BitStore),
    Lists(ListStore),
}

macro_rules! dispatch {
    ($self:ident, $s:ident => $e:expr) => {
        match $self {
            Store::Bits($s) => $e,
            Store::Lists($s) => $e,
        }
    };
}

impl Store {
    pub(crate) fn new(kind: StoreKind, n_vertices: usize, sets: Vec<Vec<usize>>) -> Self {
        match kind {
            StoreKind::Bits => Store::Bits(BitStore::new(n_vertices, sets)),
            StoreKind::Lists => Store::Lists(ListStore::new(n_vertices, sets)),
        }
    }

    pub(crate) fn size(&self, p: usize) -> usize {
        dispatch!(self, s => s.size(p))
    }

    pub(crate) fn vertices(&self, p: usize) -> Vec<usize> {
        dispatch!(self, s => s.vertices(p))
    }

    /// Live edges other than `p` that meet `p`, ascending.
    pub(crate) fn neighbours(&mut self, p: usize) -> Vec<usize> {
        dispatch!(self, s => s.neighbours(p))
    }

    /// As [`Self::neighbours`], with the size of each intersection.
    pub(crate) fn neighbours_with_common(&mut self, p: usize) -> Vec<(usize, usize)> {
        dispatch!(self, s => s.neighbours_with_common(p))
    }

    /// Live edges meeting any vertex of the given edges, ascending.
    pub(crate) fn around(&mut self, edges: &[usize]) -> Vec<usize> {
        dispatch!(self, s => s.around(edges))
    }

    /// Merges `p` into every live edge meeting it and retires `p`. Returns
    /// the size of `p` and the grown edges.
    pub(crate) fn eliminate(&mut self, p: usize) -> (usize, Vec<usize>) {
        dispatch!(self, s => s.eliminate(p))
    }
}

#[derive(Debug, Clone)]
pub(crate) struct BitStore {
    wv: usize,
    we: usize,
    /// row `p`: vertices of edge `p`
    sets: Vec<u64>,
    sizes: Vec<usize>,
    /// row `v`: live edges containing vertex `v`
    incident: Vec<u64>,
}

fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &bits)| {
        let mut b = bits;
        std::iter::from_fn(move || {
            if b == 0 {
                return None;
            }
            let t = b.trailing_zeros() as usize;
            b &= b - 1;
            Some(w * 64 + t)
        })
    })
}

impl BitStore {
    fn new(n: usize, lists: Vec<Vec<usize>>) -> Self {
        let m = lists.len();
        let (wv, we) = (n.div_ceil(64), m.div_ceil(64));
        let mut sets = vec![0u64; m * wv];
        let mut incident = vec![0u64; n * we];
        let mut sizes = Vec::with_capacity(m);
        for (p, s) in lists.iter().enumerate() {
            for &v in s {
                sets[p * wv + v / 64] |= 1 << (v % 64);
                incident[v * we + p / 64] |= 1 << (p % 64);
            }
            sizes.push(s.len());
        }
        Self {
            wv,
            we,
            sets,
            sizes,
            incident,
        }
    }

    fn row(&self, p: usize) -> &[u64] {
        &self.sets[p * self.wv..(p + 1) * self.wv]
    }

    fn size(&self, p: usize) -> usize {
        self.sizes[p]
    }

    fn vertices(&self, p: usize) -> Vec<usize> {
        ones(self.row(p)).collect()
    }

    fn neighbour_bits(&self, p: usize) -> Vec<u64> {
        let mut acc = vec![0u64; self.we];
        for v in ones(self.row(p)) {
            let inc = &self.incident[v * self.we..(v + 1) * self.we];
            acc.iter_mut().zip(inc).for_each(|(a, b)| *a |= b);
        }
        acc[p / 64] &= !(1 << (p % 64));
        acc
    }

    fn neighbours(&mut self, p: usize) -> Vec<usize> {
        ones(&self.neighbour_bits(p)).collect()
    }

    fn neighbours_with_common(&mut self, p: usize) -> Vec<(usize, usize)> {
        let x = self.row(p);
        ones(&self.neighbour_bits(p))
            .map(|f| {
                let common = x
                    .iter()
                    .zip(self.row(f))
                    .map(|(a, b)| (a & b).count_ones() as usize)
                    .sum();
                (f, common)
            })
            .collect()
    }

    fn around(&mut self, edges: &[usize]) -> Vec<usize> {
        let mut verts = vec![0u64; self.wv];
        for &f in edges {
            verts.iter_mut().zip(self.row(f)).for_each(|(a, b)| *a |= b);
        }
        let mut acc = vec![0u64; self.we];
        for v in ones(&verts) {
            let inc = &self.incident[v * self.we..(v + 1) * self.we];
            acc.iter_mut().zip(inc).for_each(|(a, b)| *a |= b);
        }
        ones(&acc).collect()
    }

    fn eliminate(&mut self, p: usize) -> (usize, Vec<usize>) {
        let grown_bits = self.neighbour_bits(p);
        let grown: Vec<usize> = ones(&grown_bits).collect();
        let x: Vec<u64> = self.row(p).to_vec();
        for &f in &grown {
            let row = &mut self.sets[f * self.wv..(f + 1) * self.wv];
            row.iter_mut().zip(&x).for_each(|(a, b)| *a |= b);
            self.sizes[f] = row.iter().map(|w| w.count_ones() as usize).sum();
        }
        // every live edge at a vertex of x meets x, so after the step the
        // edges at such a vertex are exactly the grown ones
        for v in ones(&x) {
            self.incident[v * self.we..(v + 1) * self.we].copy_from_slice(&grown_bits);
        }
        (self.sizes[p], grown)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct ListStore {
    sets: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
    stamp: Vec<u32>,
    count: Vec<usize>,
    epoch: u32,
}

impl ListStore {
    fn new(n: usize, sets: Vec<Vec<usize>>) -> Self {
        let m = sets.len();
        let mut incident = vec![Vec::new(); n];
        for (p, s) in sets.iter().enumerate() {
            for &v in s {
                incident[v].push(p);
            }
        }
        Self {
            sets,
            incident,
            stamp: vec![0; m],
            count: vec![0; m],
            epoch: 0,
        }
    }

    fn size(&self, p: usize) -> usize {
        self.sets[p].len()
    }

    fn vertices(&self, p: usize) -> Vec<usize> {
        self.sets[p].clone()
    }

    fn next_epoch(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
    }

    fn neighbours_with_common(&mut self, p: usize) -> Vec<(usize, usize)> {
        self.next_epoch();
        let mut touched = Vec::new();
        for &v in &self.sets[p] {
            for &f in &self.incident[v] {
                if f == p {
                    continue;
                }
                if self.stamp[f] != self.epoch {
                    self.stamp[f] = self.epoch;
                    self.count[f] = 0;
                    touched.push(f);
                }
                self.count[f] += 1;
            }
        }
        touched.sort_unstable();
        touched.into_iter().map(|f| (f, self.count[f])).collect()
    }

    fn neighbours(&mut self, p: usize) -> Vec<usize> {
        self.neighbours_with_common(p).into_iter().map(|(f, _)| f).collect()
    }

    fn around(&mut self, edges: &[usize]) -> Vec<usize> {
        self.next_epoch();
        let mut out = Vec::new();
        for &e in edges {
            for &v in &self.sets[e] {
                for &f in &self.incident[v] {
                    if self.stamp[f] != self.epoch {
                        self.stamp[f] = self.epoch;
                        out.push(f);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn eliminate(&mut self, p: usize) -> (usize, Vec<usize>) {
        let grown = self.neighbours(p);
        let x = std::mem::take(&mut self.sets[p]);
        for &f in &grown {
            self.sets[f] = sorted_union(&self.sets[f], &x);
        }
        for &v in &x {
            self.incident[v] = grown.clone();
        }
        let size = x.len();
        self.sets[p] = x;
        (size, grown)
    }
}
