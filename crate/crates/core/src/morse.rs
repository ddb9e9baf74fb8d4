//! Presentations from Morse data.
//!
//! Critical points are grouped into filtration levels, either by Morse index
//! or by explicitly supplied levels of the Chern-Simons-Dirac functional. Each
//! level is attached to the levels below it. An entry of the connecting map is
//! read off from signed flow-line counts when its group is `Z`. If its group
//! is trivial the entry is forced to be zero. Anything else is left unresolved.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cells::{Cell, Rational};
use crate::error::{Error, Result};
use crate::spectrum::{
    entry_stem, Attachment, AttachmentEntry, AttachmentStatus, PresentedCell, SpectrumPresentation,
};
use crate::stems::stem_order;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PointKind {
    Reducible,
    Irreducible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    pub id: String,
    pub kind: PointKind,
    /// Absolute Morse index; rational only for the reducible.
    pub index: Rational,
    /// Optional filtration level (critical value ordering).
    pub level: Option<i64>,
}

impl CriticalPoint {
    pub fn reducible(id: impl Into<String>, index: Rational) -> Self {
        CriticalPoint {
            id: id.into(),
            kind: PointKind::Reducible,
            index,
            level: None,
        }
    }

    pub fn irreducible(id: impl Into<String>, index: i64) -> Self {
        CriticalPoint {
            id: id.into(),
            kind: PointKind::Irreducible,
            index: Rational::from_integer(index),
            level: None,
        }
    }

    pub fn at_level(mut self, level: i64) -> Self {
        self.level = Some(level);
        self
    }

    /// The stable cell carried by this critical point: a representation
    /// sphere for the reducible, a free cell for an irreducible.
    pub fn cell(&self) -> Cell {
        match self.kind {
            PointKind::Reducible => Cell::trivial(0, self.index / 2),
            PointKind::Irreducible => Cell::free(self.index.to_integer()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MorseData {
    pub points: Vec<CriticalPoint>,
    /// Signed flow counts keyed by (source id, target id).
    pub flow_counts: BTreeMap<(String, String), i64>,
}

impl MorseData {
    pub fn new(points: Vec<CriticalPoint>) -> Self {
        MorseData {
            points,
            flow_counts: BTreeMap::new(),
        }
    }

    pub fn with_count(mut self, source: &str, target: &str, count: i64) -> Self {
        self.flow_counts
            .insert((source.to_string(), target.to_string()), count);
        self
    }

    fn validate(&self) -> Result<()> {
        let reducibles = self
            .points
            .iter()
            .filter(|p| p.kind == PointKind::Reducible)
            .count();
        if reducibles > 1 {
            return Err(Error::InvalidMorseData(format!(
                "{reducibles} reducible critical points"
            )));
        }
        let mut ids = BTreeSet::new();
        for p in &self.points {
            if !ids.insert(p.id.as_str()) {
                return Err(Error::InvalidMorseData(format!(
                    "duplicate critical point {}",
                    p.id
                )));
            }
            if p.kind == PointKind::Irreducible && !p.index.is_integer() {
                return Err(Error::InvalidMorseData(format!(
                    "irreducible {} has non-integral index",
                    p.id
                )));
            }
        }
        let with_level = self.points.iter().filter(|p| p.level.is_some()).count();
        if with_level != 0 && with_level != self.points.len() {
            return Err(Error::InvalidMorseData(
                "levels must be given for all critical points or none".into(),
            ));
        }
        for (s, t) in self.flow_counts.keys() {
            if !ids.contains(s.as_str()) || !ids.contains(t.as_str()) {
                return Err(Error::InvalidMorseData(format!(
                    "flow count {s} -> {t} names an unknown point"
                )));
            }
            if s == t {
                return Err(Error::InvalidMorseData(format!(
                    "flow count from {s} to itself"
                )));
            }
        }
        Ok(())
    }

    fn levels(&self) -> Vec<i64> {
        if self.points.iter().all(|p| p.level.is_some()) && !self.points.is_empty() {
            return self.points.iter().map(|p| p.level.unwrap()).collect();
        }
        let distinct: BTreeSet<Rational> = self.points.iter().map(|p| p.index).collect();
        let rank: BTreeMap<Rational, i64> = distinct.into_iter().zip(0..).collect();
        self.points.iter().map(|p| rank[&p.index]).collect()
    }
}

/// True when all occupied indices lie in two consecutive values.
pub fn is_simple(data: &MorseData) -> bool {
    let idx: BTreeSet<Rational> = data.points.iter().map(|p| p.index).collect();
    match (idx.first(), idx.last()) {
        (Some(lo), Some(hi)) => *hi - *lo <= Rational::from_integer(1),
        _ => true,
    }
}

/// Assembles the filtered presentation determined by the Morse data.
pub fn build_from_morse(data: &MorseData) -> Result<SpectrumPresentation> {
    data.validate()?;
    let levels = data.levels();
    let cells: Vec<PresentedCell> = data
        .points
        .iter()
        .zip(&levels)
        .map(|(p, &l)| PresentedCell::new(p.cell(), p.id.clone(), l))
        .collect();
    let mut used = BTreeSet::new();

    let distinct: BTreeSet<i64> = levels.iter().copied().collect();
    let mut attachments = Vec::new();
    // whether everything strictly below the current level is still a wedge
    let mut lower_is_wedge = true;
    for &level in distinct.iter().skip(1) {
        let rows: Vec<usize> = (0..cells.len()).filter(|&i| levels[i] == level).collect();
        let cols: Vec<usize> = (0..cells.len()).filter(|&i| levels[i] < level).collect();
        let mut entries = Vec::new();
        let mut unresolved = false;
        for &r in &rows {
            for &c in &cols {
                let key = (cells[r].label.clone(), cells[c].label.clone());
                let count = data.flow_counts.get(&key).copied();
                let order = entry_stem(true, &cells[r].cell, &cells[c].cell).and_then(stem_order);
                match order {
                    Ok(1) => {
                        if count.is_some() {
                            return Err(Error::InvalidMorseData(format!(
                                "flow count {} -> {} lies in a trivial group",
                                key.0, key.1
                            )));
                        }
                    }
                    Ok(0) => {
                        let count = count.ok_or_else(|| Error::MissingFlowCounts {
                            source_id: key.0.clone(),
                            target: key.1.clone(),
                        })?;
                        used.insert(key);
                        if lower_is_wedge {
                            entries.push(AttachmentEntry {
                                row: r,
                                col: c,
                                value: count,
                            });
                        } else {
                            unresolved = true;
                        }
                    }
                    _ => {
                        if count.is_some() {
                            return Err(Error::InvalidMorseData(format!(
                                "flow count {} -> {} does not determine a torsion class",
                                key.0, key.1
                            )));
                        }
                        unresolved = true;
                    }
                }
            }
        }
        let status = if unresolved {
            entries.clear();
            AttachmentStatus::Unresolved
        } else {
            AttachmentStatus::Resolved
        };
        if unresolved || entries.iter().any(|e| e.value != 0) {
            lower_is_wedge = false;
        }
        attachments.push(Attachment {
            from_level: level,
            entries,
            status,
        });
    }
    if let Some((s, t)) = data.flow_counts.keys().find(|k| !used.contains(*k)) {
        return Err(Error::InvalidMorseData(format!(
            "flow count {s} -> {t} does not go to a lower level"
        )));
    }

    normalize_signs(&cells, &mut attachments);
    SpectrumPresentation::new(true, cells, attachments)
}

/// Flips the orientation of each cell whose first integral incoming entry is
/// negative. Such flips are automorphisms of the wedge, so the stable type is
/// unchanged; afterwards the connecting maps read `(1, ..., 1)`.
fn normalize_signs(cells: &[PresentedCell], attachments: &mut [Attachment]) {
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by_key(|&i| cells[i].level);
    for c in order {
        let first = attachments
            .iter()
            .flat_map(|a| a.entries.iter())
            .filter(|e| e.col == c && e.value != 0)
            .filter(|e| entry_stem(true, &cells[e.row].cell, &cells[c].cell) == Ok(0))
            .min_by_key(|e| e.row);
        if first.is_some_and(|e| e.value < 0) {
            for a in attachments.iter_mut() {
                for e in a.entries.iter_mut() {
                    if e.col == c || e.row == c {
                        e.value = -e.value;
                    }
                }
            }
        }
    }
}
