//! Filtered cell presentations of spectra.
//!
//! A presentation lists cells with an integer filtration level. Level `n` is
//! attached to everything strictly below it by a connecting map
//! `Σ^{-1} E_n → X_{n-1}`; when `X_{n-1}` is a wedge of its cells this map is a
//! matrix whose `(u, l)` entry lies in the stem group `[Σ^{-1} u, l]`. Entries
//! are stored as multiples of that stem's generator.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::cells::{dual_cell, morphism_stem, Cell, Rational};
use crate::error::{Error, Result};
use crate::stems::{stem_order, StemElement};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PresentedCell {
    pub cell: Cell,
    pub label: String,
    pub level: i64,
}

impl PresentedCell {
    pub fn new(cell: Cell, label: impl Into<String>, level: i64) -> Self {
        PresentedCell {
            cell,
            label: label.into(),
            level,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AttachmentStatus {
    /// Every entry is known; entries not listed are zero.
    Resolved,
    /// Every entry lies in a trivial group.
    ForcedZero,
    /// Some entry is not determined by the available data.
    Unresolved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AttachmentEntry {
    /// Index of the attaching cell (at `from_level`).
    pub row: usize,
    /// Index of the cell attached to (strictly below `from_level`).
    pub col: usize,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Attachment {
    pub from_level: i64,
    pub entries: Vec<AttachmentEntry>,
    pub status: AttachmentStatus,
}

impl Attachment {
    pub fn is_zero(&self) -> bool {
        self.status != AttachmentStatus::Unresolved && self.entries.iter().all(|e| e.value == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpectrumPresentation {
    equivariant: bool,
    cells: Vec<PresentedCell>,
    attachments: Vec<Attachment>,
}

impl SpectrumPresentation {
    /// Validates and normalizes a presentation.
    ///
    /// Every level except the lowest must carry exactly one attachment. Entry
    /// values are reduced into their stem group, zero entries are dropped, and
    /// a resolved attachment whose groups are all trivial becomes `ForcedZero`.
    pub fn new(
        equivariant: bool,
        cells: Vec<PresentedCell>,
        attachments: Vec<Attachment>,
    ) -> Result<Self> {
        let mut p = SpectrumPresentation {
            equivariant,
            cells,
            attachments: Vec::new(),
        };
        if !equivariant {
            for c in &p.cells {
                if c.cell.is_free() {
                    return Err(Error::InvalidPresentation(format!(
                        "nonequivariant presentation contains free cell {}",
                        c.label
                    )));
                }
                c.cell.total_dim()?;
            }
        }
        let levels = p.levels();
        let mut by_level: BTreeMap<i64, Attachment> = BTreeMap::new();
        for a in attachments {
            if !levels.contains(&a.from_level) {
                return Err(Error::InvalidPresentation(format!(
                    "attachment from empty level {}",
                    a.from_level
                )));
            }
            if by_level.insert(a.from_level, a).is_some() {
                return Err(Error::InvalidPresentation(
                    "duplicate attachment level".into(),
                ));
            }
        }
        let lowest = levels.first().copied();
        for &level in &levels {
            match by_level.remove(&level) {
                Some(a) if Some(level) == lowest => {
                    return Err(Error::InvalidPresentation(format!(
                        "the lowest level {} cannot carry an attachment",
                        a.from_level
                    )))
                }
                Some(a) => {
                    let a = p.normalize_attachment(a)?;
                    p.attachments.push(a);
                }
                None if Some(level) == lowest => {}
                None => {
                    return Err(Error::InvalidPresentation(format!(
                        "level {level} has no attachment"
                    )));
                }
            }
        }
        Ok(p)
    }

    /// Builds a presentation from resolved entries, assigning each level its
    /// status automatically.
    pub fn from_entries(
        equivariant: bool,
        cells: Vec<PresentedCell>,
        entries: impl IntoIterator<Item = AttachmentEntry>,
    ) -> Result<Self> {
        let mut grouped: BTreeMap<i64, Vec<AttachmentEntry>> = BTreeMap::new();
        for e in entries {
            let level = cells
                .get(e.row)
                .ok_or_else(|| {
                    Error::InvalidPresentation(format!("entry row {} out of range", e.row))
                })?
                .level;
            grouped.entry(level).or_default().push(e);
        }
        let levels: BTreeSet<i64> = cells.iter().map(|c| c.level).collect();
        let attachments = levels
            .iter()
            .skip(1)
            .map(|&l| Attachment {
                from_level: l,
                entries: grouped.remove(&l).unwrap_or_default(),
                status: AttachmentStatus::Resolved,
            })
            .collect();
        if let Some((&l, _)) = grouped.iter().next() {
            return Err(Error::InvalidPresentation(format!(
                "entries from the lowest level {l}"
            )));
        }
        Self::new(equivariant, cells, attachments)
    }

    /// A wedge of the given cells, one filtration level per cell.
    pub fn wedge(equivariant: bool, cells: Vec<(Cell, String)>) -> Result<Self> {
        let cells = cells
            .into_iter()
            .map(|(c, l)| PresentedCell::new(c, l, 0))
            .collect();
        Self::from_entries(equivariant, cells, Vec::new())
    }

    pub fn is_equivariant(&self) -> bool {
        self.equivariant
    }

    pub fn cells(&self) -> &[PresentedCell] {
        &self.cells
    }

    pub fn attachments(&self) -> &[Attachment] {
        &self.attachments
    }

    /// Distinct filtration levels, ascending.
    pub fn levels(&self) -> Vec<i64> {
        let set: BTreeSet<i64> = self.cells.iter().map(|c| c.level).collect();
        set.into_iter().collect()
    }

    pub fn cells_at(&self, level: i64) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i].level == level)
            .collect()
    }

    pub fn cells_below(&self, level: i64) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i].level < level)
            .collect()
    }

    pub fn attachment_from(&self, level: i64) -> Option<&Attachment> {
        self.attachments.iter().find(|a| a.from_level == level)
    }

    /// True when every attaching map is zero.
    pub fn is_wedge(&self) -> bool {
        self.attachments.iter().all(Attachment::is_zero)
    }

    /// Stem of the group `[Σ^{-1} row, col]` housing an attachment entry.
    pub fn entry_stem(&self, row: usize, col: usize) -> Result<i64> {
        entry_stem(
            self.equivariant,
            &self.cells[row].cell,
            &self.cells[col].cell,
        )
    }

    pub fn entry_value(&self, row: usize, col: usize) -> Result<StemElement> {
        let level = self.cells[row].level;
        let value = self
            .attachment_from(level)
            .and_then(|a| a.entries.iter().find(|e| e.row == row && e.col == col))
            .map_or(0, |e| e.value);
        StemElement::new(self.entry_stem(row, col)?, value)
    }

    pub fn ensure_resolved(&self) -> Result<()> {
        match self
            .attachments
            .iter()
            .find(|a| a.status == AttachmentStatus::Unresolved)
        {
            Some(a) => Err(Error::UnresolvedAttachment(a.from_level)),
            None => Ok(()),
        }
    }

    fn normalize_attachment(&self, a: Attachment) -> Result<Attachment> {
        let rows = self.cells_at(a.from_level);
        let cols = self.cells_below(a.from_level);
        let mut entries = Vec::new();
        let mut seen = BTreeSet::new();
        for e in &a.entries {
            if !rows.contains(&e.row) || !cols.contains(&e.col) {
                return Err(Error::InvalidPresentation(format!(
                    "entry ({}, {}) does not go from level {} to a lower level",
                    e.row, e.col, a.from_level
                )));
            }
            if !seen.insert((e.row, e.col)) {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate entry ({}, {})",
                    e.row, e.col
                )));
            }
            let value = match self.entry_stem(e.row, e.col) {
                Ok(stem) => StemElement::new(stem, e.value)?.coeff(),
                // an undetermined group can only appear in an unresolved attachment
                Err(err) if a.status == AttachmentStatus::Unresolved => {
                    let _ = err;
                    e.value
                }
                Err(err) => return Err(err),
            };
            if value != 0 {
                entries.push(AttachmentEntry { value, ..*e });
            }
        }
        entries.sort();

        let mut all_trivial = true;
        for &r in &rows {
            for &c in &cols {
                match self.entry_stem(r, c).and_then(stem_order) {
                    Ok(1) => {}
                    _ => all_trivial = false,
                }
            }
        }
        let status = match a.status {
            AttachmentStatus::Unresolved => AttachmentStatus::Unresolved,
            _ if all_trivial => AttachmentStatus::ForcedZero,
            AttachmentStatus::ForcedZero => {
                return Err(Error::InvalidPresentation(format!(
                    "attachment from level {} is marked ForcedZero but its groups are nontrivial",
                    a.from_level
                )))
            }
            AttachmentStatus::Resolved => AttachmentStatus::Resolved,
        };
        Ok(Attachment {
            from_level: a.from_level,
            entries,
            status,
        })
    }

    /// Spanier-Whitehead dual: cells dualized, filtration reversed, attaching
    /// maps transposed. Cell order and labels are kept, so cell `i` of the dual
    /// is the dual of cell `i`.
    pub fn dualize(&self) -> Result<SpectrumPresentation> {
        self.ensure_resolved()?;
        let cells = self
            .cells
            .iter()
            .map(|c| PresentedCell {
                cell: dual_cell(&c.cell),
                label: c.label.clone(),
                level: -c.level,
            })
            .collect();
        let entries: Vec<AttachmentEntry> = self
            .attachments
            .iter()
            .flat_map(|a| a.entries.iter())
            .map(|e| AttachmentEntry {
                row: e.col,
                col: e.row,
                value: e.value,
            })
            .collect();
        Self::from_entries(self.equivariant, cells, entries)
    }

    /// Suspension by `m` real and `q` complex dimensions.
    /// Nonequivariantly only the total shift `m + 2q` matters, and it must be
    /// an integer.
    pub fn suspend(&self, m: i64, q: Rational) -> Result<SpectrumPresentation> {
        let (m, q) = if self.equivariant {
            (m, q)
        } else {
            let total = Rational::from_integer(m) + q * 2;
            if !total.is_integer() {
                return Err(Error::NonIntegralDimension(format!(
                    "nonequivariant suspension by {total}"
                )));
            }
            (total.to_integer(), Rational::from_integer(0))
        };
        let cells = self
            .cells
            .iter()
            .map(|c| {
                Ok(PresentedCell {
                    cell: c.cell.suspend(m, q)?,
                    label: c.label.clone(),
                    level: c.level,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.equivariant, cells, self.attachments.clone())
    }

    pub fn suspend_int(&self, m: i64, q: i64) -> Result<SpectrumPresentation> {
        self.suspend(m, Ratio::from_integer(q))
    }

    /// One-line wedge notation (cells sorted, trivial cells first), or a
    /// level-by-level description for presentations that are not wedges.
    pub fn pretty(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn entry_stem(equivariant: bool, upper: &Cell, lower: &Cell) -> Result<i64> {
    let src = upper.suspend(-1, Rational::from_integer(0))?;
    if equivariant {
        morphism_stem(&src, lower)
    } else {
        Ok(src.total_dim()? - lower.total_dim()?)
    }
}

fn wedge_sort_key(c: &Cell) -> (u8, Rational, Rational) {
    match *c {
        Cell::Trivial { real, complex } => (0, Rational::from_integer(real) + complex * 2, complex),
        Cell::Free { degree } => (1, Rational::from_integer(degree), Rational::from_integer(0)),
    }
}

impl fmt::Display for SpectrumPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cells.is_empty() {
            return write!(f, "*");
        }
        if self.is_wedge() {
            let mut cells: Vec<&Cell> = self.cells.iter().map(|c| &c.cell).collect();
            cells.sort_by_key(|c| wedge_sort_key(c));
            let parts: Vec<String> = cells.iter().map(|c| c.to_string()).collect();
            return write!(f, "{}", parts.join(" v "));
        }
        let mut lines = Vec::new();
        for level in self.levels() {
            let parts: Vec<String> = self
                .cells_at(level)
                .iter()
                .map(|&i| format!("{}:{}", self.cells[i].label, self.cells[i].cell))
                .collect();
            lines.push(format!("level {level}: {}", parts.join(" v ")));
            if let Some(a) = self.attachment_from(level) {
                let desc = match a.status {
                    AttachmentStatus::ForcedZero => "forced zero".to_string(),
                    AttachmentStatus::Unresolved => "unresolved".to_string(),
                    AttachmentStatus::Resolved if a.entries.is_empty() => "zero".to_string(),
                    AttachmentStatus::Resolved => a
                        .entries
                        .iter()
                        .map(|e| {
                            format!(
                                "{}->{}:{}",
                                self.cells[e.row].label, self.cells[e.col].label, e.value
                            )
                        })
                        .collect::<Vec<_>>()
                        .join(", "),
                };
                lines.push(format!("  attach: {desc}"));
            }
        }
        write!(f, "{}", lines.join("\n"))
    }
}

// ---------------------------------------------------------------------------
// JSON document

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct CellDoc {
    kind: String,
    label: String,
    real_dim: i64,
    complex_num: i64,
    complex_den: i64,
    level: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    row: usize,
    col: usize,
    value: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct AttachmentDoc {
    from_level: i64,
    entries: Vec<EntryDoc>,
    status: AttachmentStatus,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationDoc {
    version: u32,
    equivariant: bool,
    cells: Vec<CellDoc>,
    attachments: Vec<AttachmentDoc>,
}

impl SpectrumPresentation {
    pub fn to_json(&self) -> String {
        let doc = PresentationDoc {
            version: FORMAT_VERSION,
            equivariant: self.equivariant,
            cells: self
                .cells
                .iter()
                .map(|c| {
                    let (kind, real, complex) = match c.cell {
                        Cell::Trivial { real, complex } => ("trivial", real, complex),
                        Cell::Free { degree } => ("free", degree, Rational::from_integer(0)),
                    };
                    CellDoc {
                        kind: kind.to_string(),
                        label: c.label.clone(),
                        real_dim: real,
                        complex_num: *complex.numer(),
                        complex_den: *complex.denom(),
                        level: c.level,
                    }
                })
                .collect(),
            attachments: self
                .attachments
                .iter()
                .map(|a| AttachmentDoc {
                    from_level: a.from_level,
                    entries: a
                        .entries
                        .iter()
                        .map(|e| EntryDoc {
                            row: e.row,
                            col: e.col,
                            value: e.value,
                        })
                        .collect(),
                    status: a.status,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("presentation documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PresentationDoc =
            serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))?;
        if doc.version != FORMAT_VERSION {
            return Err(Error::Serialization(format!(
                "unsupported format version {}",
                doc.version
            )));
        }
        let cells = doc
            .cells
            .into_iter()
            .map(|c| {
                let cell = match c.kind.as_str() {
                    "free" => {
                        if c.complex_num != 0 {
                            return Err(Error::Serialization(
                                "free cells carry no complex part".into(),
                            ));
                        }
                        Cell::free(c.real_dim)
                    }
                    "trivial" => {
                        if c.complex_den <= 0 {
                            return Err(Error::Serialization(
                                "complex denominator must be positive".into(),
                            ));
                        }
                        Cell::trivial(c.real_dim, Rational::new(c.complex_num, c.complex_den))
                    }
                    other => {
                        return Err(Error::Serialization(format!("unknown cell kind {other:?}")))
                    }
                };
                Ok(PresentedCell {
                    cell,
                    label: c.label,
                    level: c.level,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let n = cells.len();
        let attachments = doc
            .attachments
            .into_iter()
            .map(|a| {
                let entries = a
                    .entries
                    .into_iter()
                    .map(|e| {
                        if e.row >= n || e.col >= n {
                            return Err(Error::Serialization(format!(
                                "entry ({}, {}) out of range",
                                e.row, e.col
                            )));
                        }
                        Ok(AttachmentEntry {
                            row: e.row,
                            col: e.col,
                            value: e.value,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Attachment {
                    from_level: a.from_level,
                    entries,
                    status: a.status,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(doc.equivariant, cells, attachments)
    }
}
