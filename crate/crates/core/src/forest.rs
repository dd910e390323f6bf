//! Union-find with undo, labelled by boundary class, shared by the
//! depth-first searches over grove edge sets.

use crate::lattice::Lattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Join {
    Merged,
    /// Would close a cycle.
    Cycle,
    /// Would merge two distinct classes.
    Conflict,
}

#[derive(Debug, Clone)]
struct Undo {
    child: usize,
    root: usize,
    root_label: Option<usize>,
}

/// Each root carries the class it contains (at most one), how many of that
/// class's members it holds, and how many of its vertices still have
/// undecided incident edges.
#[derive(Debug, Clone)]
pub(crate) struct ClassForest {
    parent: Vec<usize>,
    size: Vec<usize>,
    label: Vec<Option<usize>>,
    members: Vec<usize>,
    open: Vec<usize>,
    class_sizes: Vec<usize>,
    history: Vec<Undo>,
}

impl ClassForest {
    pub(crate) fn new(lat: &Lattice, open: Vec<usize>) -> Self {
        let n = lat.vertices.len();
        ClassForest {
            parent: (0..n).collect(),
            size: vec![1; n],
            label: lat.class_of.clone(),
            members: lat.class_of.iter().map(|c| usize::from(c.is_some())).collect(),
            open,
            class_sizes: lat.classes.iter().map(|c| c.members.len()).collect(),
            history: Vec::new(),
        }
    }

    pub(crate) fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn probe(&self, u: usize, v: usize) -> Join {
        let (a, b) = (self.find(u), self.find(v));
        if a == b {
            return Join::Cycle;
        }
        match (self.label[a], self.label[b]) {
            (Some(x), Some(y)) if x != y => Join::Conflict,
            _ => Join::Merged,
        }
    }

    pub(crate) fn join(&mut self, u: usize, v: usize) -> Join {
        let status = self.probe(u, v);
        if status != Join::Merged {
            return status;
        }
        let (mut a, mut b) = (self.find(u), self.find(v));
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.history.push(Undo { child: b, root: a, root_label: self.label[a] });
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.members[a] += self.members[b];
        self.open[a] += self.open[b];
        if self.label[a].is_none() {
            self.label[a] = self.label[b];
        }
        Join::Merged
    }

    pub(crate) fn checkpoint(&self) -> usize {
        self.history.len()
    }

    pub(crate) fn rollback(&mut self, mark: usize) {
        while self.history.len() > mark {
            let Undo { child, root, root_label } = self.history.pop().expect("non-empty");
            self.parent[child] = child;
            self.size[root] -= self.size[child];
            self.members[root] -= self.members[child];
            self.open[root] -= self.open[child];
            self.label[root] = root_label;
        }
    }

    /// Marks one vertex as having no undecided edges left. Returns `false` if
    /// this closes its component in a state no completion can repair.
    pub(crate) fn close_vertex(&mut self, v: usize) -> bool {
        let r = self.find(v);
        self.open[r] -= 1;
        self.open[r] > 0 || self.is_complete(r)
    }

    pub(crate) fn reopen_vertex(&mut self, v: usize) {
        let r = self.find(v);
        self.open[r] += 1;
    }

    /// The component holds all members of exactly one class.
    pub(crate) fn is_complete(&self, root: usize) -> bool {
        matches!(self.label[root], Some(c) if self.members[root] == self.class_sizes[c])
    }

    pub(crate) fn label_of(&self, v: usize) -> Option<usize> {
        self.label[self.find(v)]
    }
}
