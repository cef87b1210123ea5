//! Newick reading and writing.
//!
//! The reader is iterative so that deep caterpillars do not exhaust the
//! stack. Branch lengths, internal-node names and `[...]` comments are
//! consumed and dropped; only topology and leaf names survive.

use std::sync::Arc;

use super::forest::{GeneForest, GeneTreeBuilder, NodeId};
use super::labelset::{valid_name, GenomeTable};
use super::species::{SpeciesTree, SpeciesTreeBuilder};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug)]
pub(crate) struct RawNode {
    pub children: Vec<usize>,
    pub name: Option<String>,
    pub pos: Pos,
}

#[derive(Debug)]
pub(crate) struct RawTree {
    pub nodes: Vec<RawNode>,
    pub root: usize,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    at: usize,
    line: usize,
    column: usize,
}

fn is_name_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || matches!(b, b'_' | b'.' | b'-')
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            bytes: text.as_bytes(),
            at: 0,
            line: 1,
            column: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        })
    }

    fn peek_raw(&self) -> Option<u8> {
        self.bytes.get(self.at).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek_raw()?;
        self.at += 1;
        if b == b'\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(b)
    }

    /// Skips whitespace and bracketed comments.
    fn skip_trivia(&mut self) -> Result<()> {
        loop {
            match self.peek_raw() {
                Some(b) if b.is_ascii_whitespace() => {
                    self.bump();
                }
                Some(b'[') => {
                    let start = self.pos();
                    self.bump();
                    loop {
                        match self.bump() {
                            Some(b']') => break,
                            Some(_) => {}
                            None => {
                                return Err(Error::Syntax {
                                    line: start.line,
                                    column: start.column,
                                    message: "unterminated comment".into(),
                                })
                            }
                        }
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    fn peek(&mut self) -> Result<Option<u8>> {
        self.skip_trivia()?;
        Ok(self.peek_raw())
    }

    fn take_name(&mut self) -> Option<String> {
        let start = self.at;
        while matches!(self.peek_raw(), Some(b) if is_name_byte(b)) {
            self.bump();
        }
        (self.at > start).then(|| String::from_utf8_lossy(&self.bytes[start..self.at]).into_owned())
    }

    fn skip_branch_length(&mut self) -> Result<()> {
        if self.peek()? != Some(b':') {
            return Ok(());
        }
        self.bump();
        self.skip_trivia()?;
        let start = self.at;
        while matches!(self.peek_raw(), Some(b) if b.is_ascii_digit() || matches!(b, b'.' | b'-' | b'+' | b'e' | b'E'))
        {
            self.bump();
        }
        let text = std::str::from_utf8(&self.bytes[start..self.at]).unwrap_or("");
        if text.parse::<f64>().is_err() {
            return self.error("expected a number after ':'");
        }
        Ok(())
    }

    fn parse_tree(&mut self) -> Result<RawTree> {
        let mut nodes: Vec<RawNode> = Vec::new();
        let mut open: Vec<usize> = Vec::new();
        'subtree: loop {
            // Expecting the start of a subtree.
            let mut done = match self.peek()? {
                Some(b'(') => {
                    let pos = self.pos();
                    self.bump();
                    nodes.push(RawNode {
                        children: Vec::new(),
                        name: None,
                        pos,
                    });
                    open.push(nodes.len() - 1);
                    continue 'subtree;
                }
                Some(b) if is_name_byte(b) => {
                    let pos = self.pos();
                    let name = self.take_name();
                    self.skip_branch_length()?;
                    nodes.push(RawNode {
                        children: Vec::new(),
                        name,
                        pos,
                    });
                    nodes.len() - 1
                }
                Some(b) => return self.error(format!("unexpected character {:?}", b as char)),
                None => return self.error("unexpected end of input"),
            };
            // A subtree `done` is complete; attach it and look at what follows.
            loop {
                let Some(&parent) = open.last() else {
                    return match self.peek()? {
                        Some(b';') => {
                            self.bump();
                            Ok(RawTree { nodes, root: done })
                        }
                        Some(b) => self.error(format!("expected ';', found {:?}", b as char)),
                        None => self.error("expected ';' at end of tree"),
                    };
                };
                nodes[parent].children.push(done);
                match self.peek()? {
                    Some(b',') => {
                        self.bump();
                        continue 'subtree;
                    }
                    Some(b')') => {
                        self.bump();
                        open.pop();
                        self.skip_trivia()?;
                        // Internal names are read and dropped.
                        let _ = self.take_name();
                        self.skip_branch_length()?;
                        done = parent;
                    }
                    Some(b) => return self.error(format!("expected ',' or ')', found {:?}", b as char)),
                    None => return self.error("unexpected end of input inside a subtree"),
                }
            }
        }
    }
}

pub(crate) fn parse_raw_trees(text: &str) -> Result<Vec<RawTree>> {
    let mut cursor = Cursor::new(text);
    let mut trees = Vec::new();
    while cursor.peek()?.is_some() {
        trees.push(cursor.parse_tree()?);
    }
    if trees.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(trees)
}

/// Parses whitespace-separated gene trees. Genome ids follow first appearance.
pub fn parse_newick_forest(text: &str) -> Result<GeneForest> {
    let raw = parse_raw_trees(text)?;
    let mut table = GenomeTable::new();
    let mut built = Vec::with_capacity(raw.len());
    for tree in &raw {
        let mut builder = GeneTreeBuilder::new();
        // Post-order over the raw arena: children are pushed before parents.
        let mut ids: Vec<Option<NodeId>> = vec![None; tree.nodes.len()];
        let mut stack = vec![(tree.root, false)];
        while let Some((n, expanded)) = stack.pop() {
            let node = &tree.nodes[n];
            if node.children.is_empty() {
                let name = node.name.as_deref().unwrap_or_default();
                ids[n] = Some(builder.leaf(table.intern(name)?));
            } else if node.children.len() != 2 {
                return Err(Error::NonBinary {
                    line: node.pos.line,
                    column: node.pos.column,
                    children: node.children.len(),
                });
            } else if expanded {
                let l = ids[node.children[0]].expect("child visited");
                let r = ids[node.children[1]].expect("child visited");
                ids[n] = Some(builder.join(l, r));
            } else {
                stack.push((n, true));
                stack.push((node.children[1], false));
                stack.push((node.children[0], false));
            }
        }
        built.push(builder.build(ids[tree.root].expect("root visited")));
    }
    Ok(GeneForest::new(Arc::new(table), built))
}

/// Parses a single, possibly multifurcating, species tree.
pub fn parse_species_tree(text: &str) -> Result<SpeciesTree> {
    let mut raw = parse_raw_trees(text)?;
    if raw.len() != 1 {
        return Err(Error::Syntax {
            line: 1,
            column: 1,
            message: format!("expected exactly one species tree, found {}", raw.len()),
        });
    }
    let tree = raw.pop().expect("one tree");
    let mut table = GenomeTable::new();
    let mut builder = SpeciesTreeBuilder::new();
    let mut ids: Vec<Option<NodeId>> = vec![None; tree.nodes.len()];
    let mut stack = vec![(tree.root, false)];
    while let Some((n, expanded)) = stack.pop() {
        let node = &tree.nodes[n];
        if node.children.is_empty() {
            let name = node.name.as_deref().unwrap_or_default();
            if !valid_name(name) {
                return Err(Error::InvalidName(name.to_string()));
            }
            if table.get(name).is_some() {
                return Err(Error::DuplicateSpeciesLeaf(name.to_string()));
            }
            ids[n] = Some(builder.leaf(table.intern(name)?));
        } else if node.children.len() == 1 {
            return Err(Error::UnaryVertex {
                line: node.pos.line,
                column: node.pos.column,
            });
        } else if expanded {
            let kids = node.children.iter().map(|&c| ids[c].expect("child visited")).collect();
            ids[n] = Some(builder.node(kids));
        } else {
            stack.push((n, true));
            for &c in node.children.iter().rev() {
                stack.push((c, false));
            }
        }
    }
    builder.build(Arc::new(table), ids[tree.root].expect("root visited"))
}

/// Writes a rooted tree given a children accessor and a leaf-name accessor.
pub(crate) fn write_newick<'a, C, N>(root: NodeId, children: C, leaf_name: N) -> String
where
    C: Fn(NodeId) -> &'a [NodeId],
    N: Fn(NodeId) -> &'a str,
{
    enum Step {
        Enter(NodeId),
        Sep,
        Close,
    }
    let mut out = String::new();
    let mut stack = vec![Step::Enter(root)];
    while let Some(step) = stack.pop() {
        match step {
            Step::Enter(n) => {
                let kids = children(n);
                if kids.is_empty() {
                    out.push_str(leaf_name(n));
                } else {
                    out.push('(');
                    stack.push(Step::Close);
                    for (i, &c) in kids.iter().enumerate().rev() {
                        stack.push(Step::Enter(c));
                        if i > 0 {
                            stack.push(Step::Sep);
                        }
                    }
                }
            }
            Step::Sep => out.push(','),
            Step::Close => out.push(')'),
        }
    }
    out.push(';');
    out
}
