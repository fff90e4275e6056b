use std::fmt;

use serde::{Deserialize, Serialize};

use super::ArithError;

/// Index of a variable inside a [`VarTable`]. Block variables come first in
/// block order, central parameters last.
pub type VarId = usize;

/// Central (commuting, group- and shift-fixed) parameters of the coefficient
/// ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Central {
    /// Deformation parameter; admits negative exponents and is treated as a
    /// scalar of the base field when deciding polynomiality.
    Q,
    /// Formal polynomial parameter (finite W-algebra generating series).
    U,
}

impl Central {
    pub fn name(self) -> &'static str {
        match self {
            Central::Q => "q",
            Central::U => "u",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    /// 1-based label used in printed names `x[id,i]`.
    pub id: usize,
    pub len: usize,
    pub laurent: bool,
}

/// Variable layout shared by every polynomial of a setting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarTable {
    blocks: Vec<Block>,
    offsets: Vec<usize>,
    centrals: Vec<Central>,
    laurent: Vec<bool>,
}

impl VarTable {
    pub fn new(blocks: Vec<Block>, centrals: Vec<Central>) -> Result<Self, ArithError> {
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut laurent = Vec::new();
        for (pos, b) in blocks.iter().enumerate() {
            if blocks[..pos].iter().any(|o| o.id == b.id) {
                return Err(ArithError::InvalidTable(format!("duplicate block id {}", b.id)));
            }
            offsets.push(laurent.len());
            laurent.extend(std::iter::repeat_n(b.laurent, b.len));
        }
        for (pos, c) in centrals.iter().enumerate() {
            if centrals[..pos].contains(c) {
                return Err(ArithError::InvalidTable(format!("duplicate central {}", c.name())));
            }
            laurent.push(matches!(c, Central::Q));
        }
        Ok(VarTable { blocks, offsets, centrals, laurent })
    }

    /// Convenience constructor: consecutive blocks labelled 1..n.
    pub fn with_blocks(sizes: &[usize], laurent: bool, centrals: Vec<Central>) -> Result<Self, ArithError> {
        let blocks = sizes
            .iter()
            .enumerate()
            .map(|(k, &len)| Block { id: k + 1, len, laurent })
            .collect();
        Self::new(blocks, centrals)
    }

    pub fn nvars(&self) -> usize {
        self.laurent.len()
    }

    pub fn nblock_vars(&self) -> usize {
        self.laurent.len() - self.centrals.len()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn centrals(&self) -> &[Central] {
        &self.centrals
    }

    pub fn is_laurent(&self, v: VarId) -> bool {
        self.laurent[v]
    }

    pub fn laurent_mask(&self) -> &[bool] {
        &self.laurent
    }

    /// Variable id of `x[block position, index]`, both 0-based.
    pub fn var(&self, block: usize, index: usize) -> VarId {
        debug_assert!(index < self.blocks[block].len);
        self.offsets[block] + index
    }

    pub fn block_vars(&self, block: usize) -> std::ops::Range<VarId> {
        let start = self.offsets[block];
        start..start + self.blocks[block].len
    }

    pub fn block_position(&self, id: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.id == id)
    }

    /// (block position, index) of a block variable.
    pub fn locate(&self, v: VarId) -> Option<(usize, usize)> {
        if v >= self.nblock_vars() {
            return None;
        }
        let block = self.offsets.partition_point(|&o| o <= v) - 1;
        Some((block, v - self.offsets[block]))
    }

    pub fn central(&self, c: Central) -> Option<VarId> {
        self.centrals
            .iter()
            .position(|&x| x == c)
            .map(|p| self.nblock_vars() + p)
    }

    pub fn central_of(&self, v: VarId) -> Option<Central> {
        v.checked_sub(self.nblock_vars()).map(|p| self.centrals[p])
    }

    /// Variables treated as scalars of the base field (currently `q`).
    pub fn is_scalar(&self, v: VarId) -> bool {
        self.central_of(v) == Some(Central::Q)
    }

    pub fn name(&self, v: VarId) -> String {
        match self.locate(v) {
            Some((b, i)) => format!("x[{},{}]", self.blocks[b].id, i + 1),
            None => self.central_of(v).expect("variable id out of range").name().to_string(),
        }
    }
}

impl fmt::Display for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{}:{}{}", b.id, b.len, if b.laurent { "L" } else { "" }))
            .collect();
        let centrals: Vec<&str> = self.centrals.iter().map(|c| c.name()).collect();
        write!(f, "blocks[{}] centrals[{}]", blocks.join(","), centrals.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_and_names() {
        let t = VarTable::with_blocks(&[1, 2], true, vec![Central::Q]).unwrap();
        assert_eq!(t.nvars(), 4);
        assert_eq!(t.var(1, 1), 2);
        assert_eq!(t.name(2), "x[2,2]");
        assert_eq!(t.name(3), "q");
        assert_eq!(t.locate(2), Some((1, 1)));
        assert_eq!(t.locate(3), None);
        assert!(t.is_laurent(3));
        assert!(t.is_scalar(3));
    }

    #[test]
    fn duplicates_rejected() {
        let blocks = vec![
            Block { id: 1, len: 1, laurent: false },
            Block { id: 1, len: 2, laurent: false },
        ];
        assert!(VarTable::new(blocks, vec![]).is_err());
        assert!(VarTable::with_blocks(&[1], false, vec![Central::U, Central::U]).is_err());
    }

    #[test]
    fn u_is_not_laurent() {
        let t = VarTable::with_blocks(&[2], false, vec![Central::U]).unwrap();
        assert!(!t.is_laurent(2));
        assert!(!t.is_scalar(2));
    }
}
