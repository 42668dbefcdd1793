use crate::{Error, Result};

/// Grouping of parties `0..parties` into disjoint, nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    parties: usize,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>, parties: usize) -> Result<Self> {
        let mut seen = vec![false; parties];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &p in block {
                if p >= parties {
                    return Err(Error::InvalidPartition(format!(
                        "party {p} out of range for {parties} parties"
                    )));
                }
                if std::mem::replace(&mut seen[p], true) {
                    return Err(Error::InvalidPartition(format!("party {p} appears twice")));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("party {missing} is not covered")));
        }
        Ok(Partition { blocks, parties })
    }

    /// One block per party.
    pub fn finest(parties: usize) -> Self {
        Partition { blocks: (0..parties).map(|p| vec![p]).collect(), parties }
    }

    /// The cut `block | rest`, with the rest in ascending order.
    pub fn bipartition(block: &[usize], parties: usize) -> Result<Self> {
        let rest: Vec<usize> = (0..parties).filter(|p| !block.contains(p)).collect();
        Self::new(vec![block.to_vec(), rest], parties)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    /// True when every block of `self` lies inside some block of `other`.
    pub fn is_finer_than(&self, other: &Partition) -> bool {
        self.parties == other.parties
            && self
                .blocks
                .iter()
                .all(|a| other.blocks.iter().any(|b| a.iter().all(|p| b.contains(p))))
    }
}
