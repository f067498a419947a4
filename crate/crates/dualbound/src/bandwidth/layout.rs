use thiserror::Error;

use super::graph::Graph;

#[derive(Debug, Error)]
pub enum LayoutError {
    #[error("arrangement is not a bijection onto 1..=n")]
    NotBijective,
    #[error("partial layout places a vertex twice or out of range")]
    InvalidLayout,
    #[error("left and right parts overlap or exceed the vertex count")]
    Overfull,
}

/// A complete linear arrangement: a bijection from vertices to positions
/// `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    /// Position of each vertex, 1-based.
    pos: Vec<u32>,
}

impl Arrangement {
    /// From the vertex occupying each position, left to right.
    pub fn from_order(order: &[u32]) -> Result<Self, LayoutError> {
        let n = order.len();
        let mut pos = vec![0u32; n];
        for (i, &v) in order.iter().enumerate() {
            if v as usize >= n || pos[v as usize] != 0 {
                return Err(LayoutError::NotBijective);
            }
            pos[v as usize] = i as u32 + 1;
        }
        Ok(Arrangement { pos })
    }

    /// From per-vertex positions (1-based).
    pub fn from_positions(pos: Vec<u32>) -> Result<Self, LayoutError> {
        let n = pos.len();
        let mut seen = vec![false; n];
        for &p in &pos {
            if p == 0 || p as usize > n || seen[p as usize - 1] {
                return Err(LayoutError::NotBijective);
            }
            seen[p as usize - 1] = true;
        }
        Ok(Arrangement { pos })
    }

    pub fn len(&self) -> usize {
        self.pos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty()
    }

    /// 1-based position of a vertex.
    pub fn position_of(&self, v: u32) -> u32 {
        self.pos[v as usize]
    }

    /// Vertices listed by position, left to right.
    pub fn vertex_order(&self) -> Vec<u32> {
        let mut order = vec![0u32; self.pos.len()];
        for (v, &p) in self.pos.iter().enumerate() {
            order[p as usize - 1] = v as u32;
        }
        order
    }
}

/// Length of the longest edge under an arrangement; 0 for edgeless graphs.
pub fn bandwidth(graph: &Graph, arrangement: &Arrangement) -> u32 {
    assert_eq!(
        graph.vertex_count(),
        arrangement.len(),
        "arrangement size must match the graph"
    );
    graph
        .edges()
        .iter()
        .map(|&(u, v)| arrangement.position_of(u).abs_diff(arrangement.position_of(v)))
        .max()
        .unwrap_or(0)
}

/// Endpoint-anchored partial arrangement: an ordered prefix of vertices fixed
/// to positions `1..=|L|` and an ordered suffix fixed to `n, n-1, ...,
/// n-|R|+1`. The remaining vertices are free.
///
/// `right()[i]` occupies position `n - i`: the list runs from the outermost
/// position inward.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialLayout {
    n: usize,
    left: Vec<u32>,
    right: Vec<u32>,
}

impl PartialLayout {
    pub fn empty(n: usize) -> Self {
        PartialLayout {
            n,
            left: Vec::new(),
            right: Vec::new(),
        }
    }

    pub fn from_parts(n: usize, left: Vec<u32>, right: Vec<u32>) -> Result<Self, LayoutError> {
        if left.len() + right.len() > n {
            return Err(LayoutError::Overfull);
        }
        let mut seen = vec![false; n];
        for &v in left.iter().chain(right.iter()) {
            if v as usize >= n || seen[v as usize] {
                return Err(LayoutError::InvalidLayout);
            }
            seen[v as usize] = true;
        }
        Ok(PartialLayout { n, left, right })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn left(&self) -> &[u32] {
        &self.left
    }

    pub fn right(&self) -> &[u32] {
        &self.right
    }

    pub fn assigned_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn free_count(&self) -> usize {
        self.n - self.assigned_count()
    }

    pub fn is_complete(&self) -> bool {
        self.free_count() == 0
    }

    pub fn is_placed(&self, v: u32) -> bool {
        self.position_of(v).is_some()
    }

    /// 1-based position of a placed vertex.
    pub fn position_of(&self, v: u32) -> Option<u32> {
        if let Some(i) = self.left.iter().position(|&u| u == v) {
            return Some(i as u32 + 1);
        }
        self.right
            .iter()
            .position(|&u| u == v)
            .map(|i| self.n as u32 - i as u32)
    }

    /// Unplaced vertices in increasing id order.
    pub fn free_vertices(&self) -> Vec<u32> {
        let mut placed = vec![false; self.n];
        for &v in self.left.iter().chain(self.right.iter()) {
            placed[v as usize] = true;
        }
        (0..self.n as u32).filter(|&v| !placed[v as usize]).collect()
    }

    /// Extends the left prefix (next unoccupied position from the left).
    pub fn with_left(&self, v: u32) -> Result<Self, LayoutError> {
        let mut left = self.left.clone();
        left.push(v);
        Self::from_parts(self.n, left, self.right.clone())
    }

    /// Extends the right suffix (next unoccupied position from the right).
    pub fn with_right(&self, v: u32) -> Result<Self, LayoutError> {
        let mut right = self.right.clone();
        right.push(v);
        Self::from_parts(self.n, self.left.clone(), right)
    }

    /// The layout seen in a mirror: position `p` becomes `n + 1 - p`, so the
    /// right suffix becomes the left prefix and vice versa.
    pub fn mirrored(&self) -> Self {
        PartialLayout {
            n: self.n,
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    /// The complete arrangement, when no vertex is free.
    pub fn arrangement(&self) -> Option<Arrangement> {
        if !self.is_complete() {
            return None;
        }
        let mut pos = vec![0u32; self.n];
        for (i, &v) in self.left.iter().enumerate() {
            pos[v as usize] = i as u32 + 1;
        }
        for (i, &v) in self.right.iter().enumerate() {
            pos[v as usize] = self.n as u32 - i as u32;
        }
        Some(Arrangement { pos })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn bandwidth_of_a_path_in_natural_order() {
        let a = Arrangement::from_order(&[0, 1, 2]).unwrap();
        assert_eq!(bandwidth(&path3(), &a), 1);
    }

    #[test]
    fn bandwidth_of_edgeless_graph_is_zero() {
        let g = Graph::from_edges(3, []).unwrap();
        let a = Arrangement::from_order(&[2, 0, 1]).unwrap();
        assert_eq!(bandwidth(&g, &a), 0);
    }

    #[test]
    fn rejects_non_bijective_arrangement() {
        assert!(Arrangement::from_order(&[0, 0, 2]).is_err());
        assert!(Arrangement::from_positions(vec![1, 1, 3]).is_err());
    }

    #[test]
    fn layout_positions_and_mirror() {
        let l = PartialLayout::from_parts(5, vec![2], vec![4, 0]).unwrap();
        assert_eq!(l.position_of(2), Some(1));
        assert_eq!(l.position_of(4), Some(5));
        assert_eq!(l.position_of(0), Some(4));
        assert_eq!(l.position_of(1), None);
        assert_eq!(l.free_vertices(), vec![1, 3]);

        let m = l.mirrored();
        assert_eq!(m.position_of(4), Some(1));
        assert_eq!(m.position_of(0), Some(2));
        assert_eq!(m.position_of(2), Some(5));
    }

    #[test]
    fn complete_layout_to_arrangement() {
        let l = PartialLayout::from_parts(3, vec![1, 0], vec![2]).unwrap();
        assert!(l.is_complete());
        let a = l.arrangement().unwrap();
        assert_eq!(a.vertex_order(), vec![1, 0, 2]);
    }

    #[test]
    fn rejects_double_placement() {
        assert!(PartialLayout::from_parts(3, vec![0], vec![0]).is_err());
        assert!(PartialLayout::from_parts(2, vec![0, 1], vec![1]).is_err());
    }
}
