//! The forgetful functor to nonequivariant presentations, with cancellation
//! of degree-one attaching maps.
//!
//! Each free cell `Σ^m T₊` is split as `S^m ∨ S^{m+1}`. The two summands are
//! labelled `<label>.bot` and `<label>.top`. Attaching classes are split with
//! [`forget_class`].
//!
//! Cancellation: suppose an upper sphere `u` is attached to a lower sphere `l`
//! of the same dimension by `±1`. Then `u` and `l` cancel. The map from `u`
//! defines a new basis element `l' = ±l + Σ a_j l_j` of the lower wedge. Every
//! other class with an `l`-component `v` is rewritten in that basis. This
//! changes its `l_j` component by `∓ a_j ∘ v`.
//!
//! Within the lowest level that still has attaching maps, the pivot is the ±1
//! entry with the largest row index, and then the largest
//! column index. With this choice the cells that survive in a presentation and
//! in its dual correspond to each other.

use std::collections::BTreeMap;

use crate::cells::{forget_cell, forget_class, Cell, Rational};
use crate::error::{Error, Result};
use crate::spectrum::{AttachmentEntry, AttachmentStatus, PresentedCell, SpectrumPresentation};
use crate::stems::{stem_product, StemElement};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Cancellation {
    upper: usize,
    lower: usize,
    sign: i64,
    /// Components of the attaching map of `upper` other than `lower`.
    rest: Vec<(usize, StemElement)>,
}

/// Bookkeeping that relates the cells of an equivariant presentation to the
/// cells of its simplified nonequivariant form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForgetMap {
    /// For each original cell, its nonequivariant parts (bottom first).
    parts: Vec<Vec<usize>>,
    /// Dimension of each nonequivariant part before cancellation.
    dims: Vec<i64>,
    cancellations: Vec<Cancellation>,
    /// Position of each surviving part in the simplified presentation.
    survivors: Vec<Option<usize>>,
}

impl ForgetMap {
    pub fn parts(&self, cell: usize) -> &[usize] {
        &self.parts[cell]
    }

    pub fn survivor(&self, part: usize) -> Option<usize> {
        self.survivors[part]
    }

    /// Transports a class `S^k → (wedge of parts)`, given by its components on
    /// the parts, to components on the simplified presentation's cells.
    pub fn transport(
        &self,
        k: i64,
        components: &BTreeMap<usize, StemElement>,
    ) -> Result<BTreeMap<usize, StemElement>> {
        let mut v = components.clone();
        for c in &self.cancellations {
            if v.get(&c.upper).is_some_and(|x| !x.is_zero()) {
                return Err(Error::NonCanonicalLift(format!(
                    "class has a component on the cancelled cell {}",
                    c.upper
                )));
            }
            v.remove(&c.upper);
            let Some(v0) = v.remove(&c.lower) else {
                continue;
            };
            if v0.is_zero() {
                continue;
            }
            for &(l, a) in &c.rest {
                let delta = stem_product(&a, &v0)?.scale(-c.sign);
                let cur = match v.get(&l) {
                    Some(x) => *x,
                    None => StemElement::zero(k - self.dims[l])?,
                };
                v.insert(l, cur.add(&delta)?);
            }
        }
        let mut out = BTreeMap::new();
        for (part, x) in v {
            if x.is_zero() {
                continue;
            }
            let i = self.survivors[part].ok_or_else(|| {
                Error::NonCanonicalLift(format!(
                    "class has a component on the cancelled cell {part}"
                ))
            })?;
            out.insert(i, x);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forgotten {
    pub presentation: SpectrumPresentation,
    pub map: ForgetMap,
}

/// Nonequivariant presentation, simplified by cancelling degree-one attachments.
pub fn forget(p: &SpectrumPresentation) -> Result<SpectrumPresentation> {
    Ok(forget_with_map(p)?.presentation)
}

pub fn forget_with_map(p: &SpectrumPresentation) -> Result<Forgotten> {
    p.ensure_resolved()?;
    let mut cells = Vec::new();
    let mut parts = Vec::new();
    for c in p.cells() {
        let degrees = forget_cell(&c.cell)?;
        let names: Vec<String> = if degrees.len() == 2 {
            vec![format!("{}.bot", c.label), format!("{}.top", c.label)]
        } else {
            vec![c.label.clone()]
        };
        let mut idx = Vec::new();
        for (d, name) in degrees.into_iter().zip(names) {
            idx.push(cells.len());
            cells.push(PresentedCell::new(Cell::sphere(d), name, c.level));
        }
        parts.push(idx);
    }
    let mut values: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for a in p.attachments() {
        for e in &a.entries {
            let value = p.entry_value(e.row, e.col)?;
            let src = p.cells()[e.row]
                .cell
                .suspend(-1, Rational::from_integer(0))?;
            let split = if p.is_equivariant() {
                forget_class(&src, &p.cells()[e.col].cell, value)?
            } else {
                vec![(0, 0, value)]
            };
            for (i, j, x) in split {
                if !x.is_zero() {
                    values.insert((parts[e.row][i], parts[e.col][j]), x.coeff());
                }
            }
        }
    }
    let dims: Vec<i64> = cells
        .iter()
        .map(|c| c.cell.total_dim())
        .collect::<Result<_>>()?;
    let (cancellations, alive) = simplify(&cells, &dims, &mut values)?;

    let mut survivors = vec![None; cells.len()];
    let mut kept = Vec::new();
    for i in 0..cells.len() {
        if alive[i] {
            survivors[i] = Some(kept.len());
            kept.push(cells[i].clone());
        }
    }
    let entries = values
        .iter()
        .filter(|(_, &v)| v != 0)
        .map(|(&(r, c), &v)| AttachmentEntry {
            row: survivors[r].expect("rows of live entries survive"),
            col: survivors[c].expect("columns of live entries survive"),
            value: v,
        });
    let presentation =
        SpectrumPresentation::from_entries(false, kept, entries.collect::<Vec<_>>())?;
    Ok(Forgotten {
        presentation,
        map: ForgetMap {
            parts,
            dims,
            cancellations,
            survivors,
        },
    })
}

fn simplify(
    cells: &[PresentedCell],
    dims: &[i64],
    values: &mut BTreeMap<(usize, usize), i64>,
) -> Result<(Vec<Cancellation>, Vec<bool>)> {
    let mut alive = vec![true; cells.len()];
    let mut done = Vec::new();
    loop {
        values.retain(|_, v| *v != 0);
        let Some(level) = values.keys().map(|&(r, _)| cells[r].level).min() else {
            break;
        };
        let pivot = values
            .iter()
            .filter(|(&(r, c), &v)| {
                cells[r].level == level && dims[r] - 1 == dims[c] && v.abs() == 1
            })
            .map(|(&(r, c), &v)| (r, c, v))
            .max_by_key(|&(r, c, _)| (r, c));
        let Some((u0, l0, sign)) = pivot else { break };

        if let Some(&(r, _)) = values.keys().find(|&&(r, c)| c == u0 && r != u0) {
            return Err(Error::InvalidPresentation(format!(
                "cannot cancel {}: {} is attached to it",
                cells[u0].label, cells[r].label
            )));
        }
        let rest: Vec<(usize, StemElement)> = values
            .iter()
            .filter(|(&(r, c), _)| r == u0 && c != l0)
            .map(|(&(_, c), &v)| Ok((c, StemElement::new(dims[l0] - dims[c], v)?)))
            .collect::<Result<_>>()?;
        let others: Vec<(usize, i64)> = values
            .iter()
            .filter(|(&(r, c), _)| c == l0 && r != u0)
            .map(|(&(r, _), &v)| (r, v))
            .collect();
        for (u, v) in others {
            let v0 = StemElement::new(dims[u] - 1 - dims[l0], v)?;
            for &(l, a) in &rest {
                let delta = stem_product(&a, &v0)?.scale(-sign);
                let cur = StemElement::new(
                    dims[u] - 1 - dims[l],
                    values.get(&(u, l)).copied().unwrap_or(0),
                )?;
                values.insert((u, l), cur.add(&delta)?.coeff());
            }
            values.remove(&(u, l0));
        }
        values.retain(|&(r, c), _| r != u0 && c != l0);
        alive[u0] = false;
        alive[l0] = false;
        done.push(Cancellation {
            upper: u0,
            lower: l0,
            sign,
            rest,
        });
    }
    Ok((done, alive))
}

/// True when the presentation is a wedge of spheres.
pub fn is_split(p: &SpectrumPresentation) -> bool {
    !p.is_equivariant()
        && p.attachments()
            .iter()
            .all(|a| a.status != AttachmentStatus::Unresolved && a.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> SpectrumPresentation {
        let cells = vec![
            PresentedCell::new(Cell::sphere(0), "theta", 1),
            PresentedCell::new(Cell::free(-2), "x1", 0),
            PresentedCell::new(Cell::free(-2), "x2", 0),
        ];
        SpectrumPresentation::from_entries(
            true,
            cells,
            vec![
                AttachmentEntry {
                    row: 0,
                    col: 1,
                    value: 1,
                },
                AttachmentEntry {
                    row: 0,
                    col: 2,
                    value: 1,
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn triangle_forgets_to_wedge() {
        let f = forget_with_map(&triangle()).unwrap();
        assert_eq!(f.presentation.pretty(), "S^-2 v S^-2 v S^-1");
        let labels: Vec<&str> = f
            .presentation
            .cells()
            .iter()
            .map(|c| c.label.as_str())
            .collect();
        assert_eq!(labels, ["x1.bot", "x1.top", "x2.bot"]);
    }

    #[test]
    fn dual_triangle_keeps_matching_cells() {
        let f = forget(&triangle().dualize().unwrap()).unwrap();
        assert_eq!(f.pretty(), "S^1 v S^2 v S^2");
        let labels: Vec<&str> = f.cells().iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["x1.bot", "x1.top", "x2.top"]);
    }

    #[test]
    fn transport_through_cancellation() {
        let f = forget_with_map(&triangle()).unwrap();
        // the class on x2.top equals minus the class on x1.top after cancelling theta against x2.top
        let x2top = f.map.parts(2)[1];
        let comps = BTreeMap::from([(x2top, StemElement::new(0, 1).unwrap())]);
        let out = f.map.transport(-1, &comps).unwrap();
        assert_eq!(out, BTreeMap::from([(1, StemElement::new(0, -1).unwrap())]));
    }

    #[test]
    fn sphere_is_unchanged() {
        let p = SpectrumPresentation::wedge(true, vec![(Cell::sphere(0), "theta".into())]).unwrap();
        assert_eq!(forget(&p).unwrap().pretty(), "S^0");
    }

    #[test]
    fn non_integral_cell_rejected() {
        let p = SpectrumPresentation::wedge(
            true,
            vec![(
                Cell::trivial(0, crate::cells::Rational::new(1, 8)),
                "t".into(),
            )],
        )
        .unwrap();
        assert!(matches!(forget(&p), Err(Error::NonIntegralDimension(_))));
    }
}
