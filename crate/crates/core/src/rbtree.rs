//! A red-black ordered map with parent links and a seekable cursor.
//!
//! Nodes live in an arena and refer to each other by index, so a cursor is a
//! single node id. Seeking from a node climbs parent links until it finds an
//! ancestor that is not below the target, then descends with an ordinary
//! binary search; both phases are O(log n). Deletion is not supported.

use std::fmt;
use std::rc::Rc;

use crate::counter::Counter;
use crate::sources::Element;
use crate::stream::{before_target, IndexedStream, Position};

/// Index of a node in the arena. `NodeId::NIL` is the exhausted cursor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    pub const NIL: NodeId = NodeId(u32::MAX);

    #[inline(always)]
    pub fn is_nil(self) -> bool {
        self == Self::NIL
    }

    #[inline(always)]
    fn ix(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Color {
    Red,
    Black,
}

#[derive(Clone, Debug)]
struct Node<K, V> {
    key: K,
    value: V,
    color: Color,
    left: NodeId,
    right: NodeId,
    parent: NodeId,
}

#[derive(Clone)]
pub struct OrderedTreeMap<K, V> {
    nodes: Vec<Node<K, V>>,
    root: NodeId,
}

impl<K, V> Default for OrderedTreeMap<K, V> {
    fn default() -> Self {
        OrderedTreeMap {
            nodes: Vec::new(),
            root: NodeId::NIL,
        }
    }
}

impl<K: fmt::Debug, V: fmt::Debug> fmt::Debug for OrderedTreeMap<K, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

impl<K, V> OrderedTreeMap<K, V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    #[inline(always)]
    fn node(&self, id: NodeId) -> &Node<K, V> {
        &self.nodes[id.ix()]
    }

    #[inline(always)]
    fn node_mut(&mut self, id: NodeId) -> &mut Node<K, V> {
        &mut self.nodes[id.ix()]
    }

    #[inline(always)]
    fn left(&self, id: NodeId) -> NodeId {
        self.node(id).left
    }

    #[inline(always)]
    fn right(&self, id: NodeId) -> NodeId {
        self.node(id).right
    }

    #[inline(always)]
    fn parent(&self, id: NodeId) -> NodeId {
        self.node(id).parent
    }

    fn is_red(&self, id: NodeId) -> bool {
        !id.is_nil() && self.node(id).color == Color::Red
    }

    pub fn key(&self, id: NodeId) -> &K {
        &self.node(id).key
    }

    pub fn value(&self, id: NodeId) -> &V {
        &self.node(id).value
    }

    /// Leftmost node, or NIL for an empty tree.
    pub fn first(&self) -> NodeId {
        let mut cur = self.root;
        if cur.is_nil() {
            return cur;
        }
        while !self.left(cur).is_nil() {
            cur = self.left(cur);
        }
        cur
    }

    /// In-order successor, or NIL.
    pub fn successor(&self, id: NodeId) -> NodeId {
        let r = self.right(id);
        if !r.is_nil() {
            let mut cur = r;
            while !self.left(cur).is_nil() {
                cur = self.left(cur);
            }
            return cur;
        }
        let mut child = id;
        let mut p = self.parent(id);
        while !p.is_nil() && self.right(p) == child {
            child = p;
            p = self.parent(p);
        }
        p
    }

    pub fn iter(&self) -> Iter<'_, K, V> {
        Iter {
            tree: self,
            cur: self.first(),
        }
    }

    /// Starting at `from`, the least node whose key is not `below`, or NIL.
    ///
    /// `below` must be downward closed. If `from`'s own key is not below,
    /// `from` is returned unchanged: the cursor never moves backwards.
    pub fn seek_from<C: Counter>(&self, from: NodeId, below: impl Fn(&K) -> bool, c: &C) -> NodeId {
        if from.is_nil() {
            return from;
        }
        c.probe();
        if !below(self.key(from)) {
            return from;
        }

        // `target` is the least node not below; `ancestor` is the least
        // ancestor of `candidate` greater than it. Loop invariants:
        //   1. if target < ancestor, target is candidate or a descendant of current
        //   2. current < ancestor
        // and target > candidate on entry to each iteration.
        let mut candidate = from;
        let mut current = self.right(from);
        loop {
            let parent = self.parent(candidate);
            let is_left_child = parent.is_nil() || self.left(parent) == candidate;
            candidate = parent;
            if is_left_child {
                // ancestor = parent
                if candidate.is_nil() {
                    break;
                }
                c.probe();
                if !below(self.key(candidate)) {
                    // target <= parent
                    break;
                }
                current = self.right(candidate);
            } else {
                // Right child: ancestor is unchanged. One binary-search step
                // from current keeps invariant 1 and may end the climb early.
                if !current.is_nil() {
                    c.probe();
                    if below(self.key(current)) {
                        current = self.right(current);
                    } else {
                        // target <= current < ancestor
                        candidate = current;
                        current = self.left(current);
                        break;
                    }
                }
            }
        }

        // target <= candidate, so target is candidate or below current.
        while !current.is_nil() {
            c.probe();
            if below(self.key(current)) {
                current = self.right(current);
            } else {
                candidate = current;
                current = self.left(current);
            }
        }
        candidate
    }
}

impl<K: Ord, V> OrderedTreeMap<K, V> {
    fn find(&self, key: &K) -> NodeId {
        let mut cur = self.root;
        while !cur.is_nil() {
            let n = self.node(cur);
            match key.cmp(&n.key) {
                std::cmp::Ordering::Less => cur = n.left,
                std::cmp::Ordering::Greater => cur = n.right,
                std::cmp::Ordering::Equal => return cur,
            }
        }
        NodeId::NIL
    }

    pub fn get(&self, key: &K) -> Option<&V> {
        let id = self.find(key);
        (!id.is_nil()).then(|| self.value(id))
    }

    pub fn contains_key(&self, key: &K) -> bool {
        !self.find(key).is_nil()
    }

    pub fn get_mut(&mut self, key: &K) -> Option<&mut V> {
        let id = self.find(key);
        (!id.is_nil()).then(|| &mut self.node_mut(id).value)
    }

    /// Inserts or replaces; returns the previous value.
    pub fn insert(&mut self, key: K, value: V) -> Option<V> {
        match self.locate(&key) {
            Ok(id) => Some(std::mem::replace(&mut self.node_mut(id).value, value)),
            Err((parent, go_left)) => {
                self.attach(parent, go_left, key, value);
                None
            }
        }
    }

    /// Mutable slot for `key`, inserting `V::default()` if missing.
    pub fn entry_mut(&mut self, key: K) -> &mut V
    where
        V: Default,
    {
        let id = match self.locate(&key) {
            Ok(id) => id,
            Err((parent, go_left)) => self.attach(parent, go_left, key, V::default()),
        };
        &mut self.node_mut(id).value
    }

    /// Ok(existing node) or Err((parent, insert-as-left-child)).
    fn locate(&self, key: &K) -> Result<NodeId, (NodeId, bool)> {
        let mut parent = NodeId::NIL;
        let mut go_left = false;
        let mut cur = self.root;
        while !cur.is_nil() {
            parent = cur;
            let n = self.node(cur);
            match key.cmp(&n.key) {
                std::cmp::Ordering::Less => {
                    go_left = true;
                    cur = n.left;
                }
                std::cmp::Ordering::Greater => {
                    go_left = false;
                    cur = n.right;
                }
                std::cmp::Ordering::Equal => return Ok(cur),
            }
        }
        Err((parent, go_left))
    }

    fn attach(&mut self, parent: NodeId, go_left: bool, key: K, value: V) -> NodeId {
        assert!(self.nodes.len() < u32::MAX as usize, "tree is full");
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(Node {
            key,
            value,
            color: Color::Red,
            left: NodeId::NIL,
            right: NodeId::NIL,
            parent,
        });
        if parent.is_nil() {
            self.root = id;
        } else if go_left {
            self.node_mut(parent).left = id;
        } else {
            self.node_mut(parent).right = id;
        }
        self.insert_fixup(id);
        id
    }

    fn insert_fixup(&mut self, mut z: NodeId) {
        while self.is_red(self.parent(z)) {
            let p = self.parent(z);
            // A red parent is never the root, so the grandparent exists.
            let g = self.parent(p);
            if p == self.left(g) {
                let uncle = self.right(g);
                if self.is_red(uncle) {
                    self.node_mut(p).color = Color::Black;
                    self.node_mut(uncle).color = Color::Black;
                    self.node_mut(g).color = Color::Red;
                    z = g;
                } else {
                    if z == self.right(p) {
                        z = p;
                        self.rotate_left(z);
                    }
                    let p = self.parent(z);
                    let g = self.parent(p);
                    self.node_mut(p).color = Color::Black;
                    self.node_mut(g).color = Color::Red;
                    self.rotate_right(g);
                }
            } else {
                let uncle = self.left(g);
                if self.is_red(uncle) {
                    self.node_mut(p).color = Color::Black;
                    self.node_mut(uncle).color = Color::Black;
                    self.node_mut(g).color = Color::Red;
                    z = g;
                } else {
                    if z == self.left(p) {
                        z = p;
                        self.rotate_right(z);
                    }
                    let p = self.parent(z);
                    let g = self.parent(p);
                    self.node_mut(p).color = Color::Black;
                    self.node_mut(g).color = Color::Red;
                    self.rotate_left(g);
                }
            }
        }
        let root = self.root;
        self.node_mut(root).color = Color::Black;
    }

    fn replace_child(&mut self, parent: NodeId, old: NodeId, new: NodeId) {
        if parent.is_nil() {
            self.root = new;
        } else if self.left(parent) == old {
            self.node_mut(parent).left = new;
        } else {
            self.node_mut(parent).right = new;
        }
    }

    fn rotate_left(&mut self, x: NodeId) {
        let y = self.right(x);
        let yl = self.left(y);
        self.node_mut(x).right = yl;
        if !yl.is_nil() {
            self.node_mut(yl).parent = x;
        }
        let xp = self.parent(x);
        self.node_mut(y).parent = xp;
        self.replace_child(xp, x, y);
        self.node_mut(y).left = x;
        self.node_mut(x).parent = y;
    }

    fn rotate_right(&mut self, x: NodeId) {
        let y = self.left(x);
        let yr = self.right(y);
        self.node_mut(x).left = yr;
        if !yr.is_nil() {
            self.node_mut(yr).parent = x;
        }
        let xp = self.parent(x);
        self.node_mut(y).parent = xp;
        self.replace_child(xp, x, y);
        self.node_mut(y).right = x;
        self.node_mut(x).parent = y;
    }

    /// Checks BST order, red-black balance and parent links. Returns the
    /// black height on success.
    pub fn check_invariants(&self) -> Result<usize, String> {
        if self.root.is_nil() {
            return if self.nodes.is_empty() {
                Ok(0)
            } else {
                Err("nodes without a root".into())
            };
        }
        if self.is_red(self.root) {
            return Err("red root".into());
        }
        if !self.parent(self.root).is_nil() {
            return Err("root has a parent".into());
        }
        let mut seen = 0usize;
        let bh = self.check_subtree(self.root, None, None, &mut seen)?;
        if seen != self.nodes.len() {
            return Err(format!("{} nodes reachable of {}", seen, self.nodes.len()));
        }
        Ok(bh)
    }

    fn check_subtree(
        &self,
        id: NodeId,
        lo: Option<&K>,
        hi: Option<&K>,
        seen: &mut usize,
    ) -> Result<usize, String> {
        if id.is_nil() {
            return Ok(1);
        }
        *seen += 1;
        let n = self.node(id);
        if lo.is_some_and(|lo| n.key <= *lo) || hi.is_some_and(|hi| n.key >= *hi) {
            return Err(format!("order violated at node {}", id.0));
        }
        for child in [n.left, n.right] {
            if !child.is_nil() {
                if self.parent(child) != id {
                    return Err(format!("bad parent link below node {}", id.0));
                }
                if n.color == Color::Red && self.is_red(child) {
                    return Err(format!("red-red at node {}", id.0));
                }
            }
        }
        let l = self.check_subtree(n.left, lo, Some(&n.key), seen)?;
        let r = self.check_subtree(n.right, Some(&n.key), hi, seen)?;
        if l != r {
            return Err(format!("black heights {l} != {r} at node {}", id.0));
        }
        Ok(l + usize::from(n.color == Color::Black))
    }

    pub fn stream(&self) -> TreeCursor<'_, K, V> {
        TreeCursor::new(self, ())
    }

    pub fn stream_counted<C: Counter>(&self, counter: C) -> TreeCursor<'_, K, V, C> {
        TreeCursor::new(self, counter)
    }
}

impl<K: Ord, V> FromIterator<(K, V)> for OrderedTreeMap<K, V> {
    fn from_iter<I: IntoIterator<Item = (K, V)>>(iter: I) -> Self {
        let mut t = OrderedTreeMap::new();
        for (k, v) in iter {
            t.insert(k, v);
        }
        t
    }
}

pub struct Iter<'a, K, V> {
    tree: &'a OrderedTreeMap<K, V>,
    cur: NodeId,
}

impl<'a, K, V> Iterator for Iter<'a, K, V> {
    type Item = (&'a K, &'a V);

    fn next(&mut self) -> Option<Self::Item> {
        if self.cur.is_nil() {
            return None;
        }
        let id = self.cur;
        self.cur = self.tree.successor(id);
        Some((self.tree.key(id), self.tree.value(id)))
    }
}

/// A stream over a tree: the current node, or NIL once exhausted. Always
/// ready while valid; `next` is the in-order successor.
pub struct TreeCursor<'a, K, V, C = ()> {
    tree: &'a OrderedTreeMap<K, V>,
    node: NodeId,
    counter: C,
}

impl<'a, K, V, C> TreeCursor<'a, K, V, C> {
    pub fn new(tree: &'a OrderedTreeMap<K, V>, counter: C) -> Self {
        TreeCursor {
            tree,
            node: tree.first(),
            counter,
        }
    }

    pub fn node(&self) -> NodeId {
        self.node
    }
}

/// `tree_stream(t)`.
pub fn tree_stream<K, V>(tree: &OrderedTreeMap<K, V>) -> TreeCursor<'_, K, V> {
    TreeCursor::new(tree, ())
}

impl<K, V, C: Clone> Clone for TreeCursor<'_, K, V, C> {
    fn clone(&self) -> Self {
        TreeCursor {
            tree: self.tree,
            node: self.node,
            counter: self.counter.clone(),
        }
    }
}

impl<K, V, C> fmt::Debug for TreeCursor<'_, K, V, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TreeCursor").field("node", &self.node).finish()
    }
}

impl<'a, K, V, C> IndexedStream for TreeCursor<'a, K, V, C>
where
    K: Ord + Clone,
    V: Element<'a>,
    C: Counter,
{
    type Key = K;
    type Value = V::Out;

    #[inline(always)]
    fn valid(&self) -> bool {
        !self.node.is_nil()
    }
    #[inline(always)]
    fn ready(&self) -> bool {
        true
    }
    #[inline(always)]
    fn index(&self) -> K {
        debug_assert!(self.valid());
        self.tree.key(self.node).clone()
    }
    #[inline(always)]
    fn value(&self) -> V::Out {
        debug_assert!(self.valid());
        let tree: &'a OrderedTreeMap<K, V> = self.tree;
        tree.value(self.node).element()
    }
    #[inline]
    fn seek(&mut self, key: &K, strict: bool) {
        debug_assert!(self.valid());
        self.counter.seek();
        self.node = self
            .tree
            .seek_from(self.node, |k| before_target(k, key, strict), &self.counter);
    }
}

impl<K, V, C> Position for TreeCursor<'_, K, V, C> {
    type Pos = NodeId;
    fn position(&self) -> NodeId {
        self.node
    }
}

impl<'a, K: Ord + Clone + 'a, V: Element<'a> + 'a> Element<'a> for OrderedTreeMap<K, V> {
    type Out = TreeCursor<'a, K, V>;
    fn element(&'a self) -> Self::Out {
        self.stream()
    }
}

/// A tree stream that shares ownership of its tree and yields cloned values.
pub struct SharedTreeStream<K, V> {
    tree: Rc<OrderedTreeMap<K, V>>,
    node: NodeId,
}

impl<K, V> SharedTreeStream<K, V> {
    pub fn new(tree: Rc<OrderedTreeMap<K, V>>) -> Self {
        let node = tree.first();
        SharedTreeStream { tree, node }
    }

    pub fn tree(&self) -> &OrderedTreeMap<K, V> {
        &self.tree
    }
}

impl<K, V> Clone for SharedTreeStream<K, V> {
    fn clone(&self) -> Self {
        SharedTreeStream {
            tree: Rc::clone(&self.tree),
            node: self.node,
        }
    }
}

impl<K, V> fmt::Debug for SharedTreeStream<K, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SharedTreeStream").field("node", &self.node).finish()
    }
}

impl<K: Ord + Clone, V: Clone> IndexedStream for SharedTreeStream<K, V> {
    type Key = K;
    type Value = V;

    #[inline(always)]
    fn valid(&self) -> bool {
        !self.node.is_nil()
    }
    #[inline(always)]
    fn ready(&self) -> bool {
        true
    }
    #[inline(always)]
    fn index(&self) -> K {
        self.tree.key(self.node).clone()
    }
    #[inline(always)]
    fn value(&self) -> V {
        self.tree.value(self.node).clone()
    }
    #[inline]
    fn seek(&mut self, key: &K, strict: bool) {
        debug_assert!(self.valid());
        self.node = self
            .tree
            .seek_from(self.node, |k| before_target(k, key, strict), &());
    }
}

impl<K, V> Position for SharedTreeStream<K, V> {
    type Pos = NodeId;
    fn position(&self) -> NodeId {
        self.node
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::StepCounter;

    fn tree(keys: &[i64]) -> OrderedTreeMap<i64, i64> {
        keys.iter().map(|&k| (k, k * 10)).collect()
    }

    #[test]
    fn insert_get() {
        let mut t = OrderedTreeMap::new();
        assert_eq!(t.get(&1), None);
        t.insert(1, 9);
        assert_eq!(t.get(&1), Some(&9));
        assert_eq!(t.insert(1, 4), Some(9));
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn sequential_inserts_stay_balanced() {
        let mut t = OrderedTreeMap::new();
        for k in 0..2000i64 {
            t.insert(k, ());
            if k % 97 == 0 {
                t.check_invariants().unwrap();
            }
        }
        let bh = t.check_invariants().unwrap();
        // height <= 2 * black height bounds depth by 2 log2(n + 1)
        assert!(bh <= 12, "black height {bh}");
        let mut t = OrderedTreeMap::new();
        for k in (0..2000i64).rev() {
            t.insert(k, ());
        }
        t.check_invariants().unwrap();
    }

    #[test]
    fn stream_in_order() {
        let t = tree(&[9, 2, 5]);
        assert_eq!(t.stream().collect_pairs(), vec![(2, 20), (5, 50), (9, 90)]);
        let e: OrderedTreeMap<i64, i64> = OrderedTreeMap::new();
        assert!(e.stream().collect_pairs().is_empty());
    }

    #[test]
    fn seek_examples() {
        let t = tree(&[1, 4, 8, 12]);
        let mut s = t.stream();
        s.seek(&8, false);
        assert_eq!(s.index(), 8);
        s.seek(&3, false);
        assert_eq!(s.index(), 8);
        s.seek(&8, true);
        assert_eq!(s.index(), 12);
        s.seek(&13, false);
        assert!(!s.valid());
    }

    #[test]
    fn seek_is_logarithmic() {
        let t: OrderedTreeMap<i64, ()> = (0..4096).map(|k| (k, ())).collect();
        let c = StepCounter::new();
        let mut s = t.stream_counted(&c);
        s.seek(&4000, false);
        assert_eq!(s.index(), 4000);
        // climb + descend, each at most the tree height (<= 2 log2(n+1))
        assert!(c.probes() <= 4 * 13, "probes = {}", c.probes());
    }

    #[test]
    fn seek_matches_successor_scan() {
        let keys: Vec<i64> = (0..60).map(|i| (i * 37) % 101).collect();
        let t = tree(&keys);
        let mut sorted = keys.clone();
        sorted.sort();
        let mut node = t.first();
        while !node.is_nil() {
            for target in -1..103 {
                for strict in [false, true] {
                    let below = |k: &i64| *k < target || (strict && *k == target);
                    let mut want = node;
                    while !want.is_nil() && below(t.key(want)) {
                        want = t.successor(want);
                    }
                    assert_eq!(t.seek_from(node, below, &()), want);
                }
            }
            node = t.successor(node);
        }
    }

    #[test]
    fn entry_mut_defaults() {
        let mut t: OrderedTreeMap<i64, i64> = OrderedTreeMap::new();
        *t.entry_mut(3) += 1;
        *t.entry_mut(3) += 2;
        *t.entry_mut(1) += 5;
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![(&1, &5), (&3, &3)]);
        t.check_invariants().unwrap();
    }
}
