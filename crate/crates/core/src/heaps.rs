//! Heaps (decreasing binary trees) of words, their shapes, subtree toggles
//! and the recursive form of the reversal-inversion map.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{PartialPermutation, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Node {
    label: u8,
    left: Option<usize>,
    right: Option<usize>,
}

/// Decreasing binary tree whose in-order reading is the source word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Heap {
    nodes: Vec<Node>,
    root: Option<usize>,
}

impl Heap {
    /// Root is the maximum; the prefix before it builds the left subtree and
    /// the suffix after it the right subtree. The empty word gives the empty heap.
    pub fn from_word(word: &[u8]) -> Self {
        let mut nodes = Vec::with_capacity(word.len());
        let root = build(word, &mut nodes);
        Self { nodes, root }
    }

    pub fn of_permutation(w: &Permutation) -> Self {
        Self::from_word(w.word())
    }

    pub fn of_partial(p: &PartialPermutation) -> Self {
        Self::from_word(p.word())
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_none()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn root_label(&self) -> Option<u8> {
        self.root.map(|r| self.nodes[r].label)
    }

    /// In-order reading.
    pub fn word(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = Vec::new();
        let mut cur = self.root;
        while cur.is_some() || !stack.is_empty() {
            while let Some(i) = cur {
                stack.push(i);
                cur = self.nodes[i].left;
            }
            let i = stack.pop().expect("stack is nonempty");
            out.push(self.nodes[i].label);
            cur = self.nodes[i].right;
        }
        out
    }

    pub fn to_permutation(&self) -> Result<Permutation> {
        Permutation::new(self.word())
    }

    pub fn to_partial(&self) -> PartialPermutation {
        PartialPermutation::new(self.word()).expect("heap labels are distinct")
    }

    /// Edges on a longest root-to-leaf path.
    pub fn height(&self) -> Result<u32> {
        let root = self.root.ok_or(Error::EmptyHeap)?;
        let mut best = 0;
        let mut stack = vec![(root, 0u32)];
        while let Some((i, depth)) = stack.pop() {
            best = best.max(depth);
            let node = self.nodes[i];
            stack.extend(node.left.map(|c| (c, depth + 1)));
            stack.extend(node.right.map(|c| (c, depth + 1)));
        }
        Ok(best)
    }

    /// Swaps the left and right subtrees of the vertex carrying `label`.
    pub fn toggle(&self, label: usize) -> Result<Heap> {
        let i = self
            .nodes
            .iter()
            .position(|node| node.label as usize == label)
            .ok_or(Error::LabelNotFound(label))?;
        let mut out = self.clone();
        let node = &mut out.nodes[i];
        std::mem::swap(&mut node.left, &mut node.right);
        Ok(out)
    }

    pub fn shape(&self) -> TreeShape {
        let mut bits = Vec::with_capacity(2 * self.nodes.len());
        let mut stack: Vec<usize> = self.root.into_iter().collect();
        while let Some(i) = stack.pop() {
            let node = self.nodes[i];
            bits.push(node.left.is_some());
            bits.push(node.right.is_some());
            stack.extend(node.right);
            stack.extend(node.left);
        }
        TreeShape(bits)
    }

    /// Shape with left/right forgotten, as a canonical bracket string.
    pub fn unordered_shape(&self) -> String {
        fn canon(h: &Heap, i: Option<usize>) -> String {
            let Some(i) = i else { return String::new() };
            let node = h.nodes[i];
            let mut kids: Vec<String> = [node.left, node.right]
                .into_iter()
                .flatten()
                .map(|c| canon(h, Some(c)))
                .collect();
            kids.sort();
            format!("({})", kids.concat())
        }
        canon(self, self.root)
    }

    /// Indented text rendering: the label, then `L:`/`R:` children.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        if let Some(r) = self.root {
            self.pretty_node(r, 0, "", &mut out);
        }
        out
    }

    fn pretty_node(&self, i: usize, depth: usize, tag: &str, out: &mut String) {
        let node = self.nodes[i];
        out.push_str(&"  ".repeat(depth));
        out.push_str(tag);
        out.push_str(&node.label.to_string());
        out.push('\n');
        if let Some(l) = node.left {
            self.pretty_node(l, depth + 1, "L:", out);
        }
        if let Some(r) = node.right {
            self.pretty_node(r, depth + 1, "R:", out);
        }
    }
}

fn build(word: &[u8], nodes: &mut Vec<Node>) -> Option<usize> {
    let (pos, &label) = word.iter().enumerate().max_by_key(|&(_, v)| *v)?;
    let idx = nodes.len();
    nodes.push(Node {
        label,
        left: None,
        right: None,
    });
    let left = build(&word[..pos], nodes);
    let right = build(&word[pos + 1..], nodes);
    nodes[idx].left = left;
    nodes[idx].right = right;
    Some(idx)
}

/// Unlabeled binary tree: preorder, two bits per node (has-left, has-right).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeShape(pub Vec<bool>);

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Height of the heap of a nonempty word, without building the tree.
pub fn word_height(word: &[u8]) -> Result<u32> {
    if word.is_empty() {
        return Err(Error::EmptyHeap);
    }
    // (subword start, end, depth)
    let mut best = 0;
    let mut stack = vec![(0usize, word.len(), 0u32)];
    while let Some((s, e, d)) = stack.pop() {
        if s >= e {
            continue;
        }
        best = best.max(d);
        let pos = s + argmax(&word[s..e]);
        stack.push((s, pos, d + 1));
        stack.push((pos + 1, e, d + 1));
    }
    Ok(best)
}

fn argmax(word: &[u8]) -> usize {
    let mut best = 0;
    for (i, &v) in word.iter().enumerate() {
        if v > word[best] {
            best = i;
        }
    }
    best
}

/// Reversal-inversion in conjugate form, via `φ(A n B) = φ(B) n A`.
pub fn phi_fast(w: &Permutation) -> Permutation {
    let mut out = vec![0; w.degree()];
    phi_fast_into(w.word(), &mut out);
    Permutation::from_word_unchecked(out)
}

pub fn phi_fast_partial(p: &PartialPermutation) -> PartialPermutation {
    let mut out = vec![0; p.len()];
    phi_fast_into(p.word(), &mut out);
    PartialPermutation::new(out).expect("rearrangement of the support")
}

/// Each level peels off the maximum of the current suffix; the output lists
/// the innermost level first, each level contributing its maximum then the
/// prefix `A` that preceded it.
pub(crate) fn phi_fast_into(word: &[u8], out: &mut [u8]) {
    let mut levels: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    while start < word.len() {
        let pos = start + argmax(&word[start..]);
        levels.push((start, pos));
        start = pos + 1;
    }
    let mut k = 0;
    for &(s, pos) in levels.iter().rev() {
        out[k] = word[pos];
        k += 1;
        out[k..k + (pos - s)].copy_from_slice(&word[s..pos]);
        k += pos - s;
    }
}

/// `2^h` where `h` is the height of the heap of `w`.
pub fn predicted_orbit_size(w: &Permutation) -> u64 {
    1u64 << word_height(w.word()).expect("permutations are nonempty")
}
