//! Homotopy groups of presentations through the long exact sequence of the
//! attaching cofibration.
//!
//! Split the cells into `E`, the cells with a nonzero attaching map, and `B`,
//! everything else. This needs no cell of `E` to be attached to; otherwise
//! the presentation has more than two stages and is rejected. Then `X` is the cofiber of
//! `f: Σ^{-1}E → B` and there is an exact sequence
//!
//! ```text
//! π_k(Σ^{-1}E) --f--> π_k(B) --> π_k(X) --> π_k(E) --f--> π_{k-1}(B)
//! ```
//!
//! so `0 → C → π_k(X) → K → 0` with `C = coker f` and `K = ker f`. The group
//! is returned when `C` or `K` vanishes, or when `K` is free and the sequence
//! splits. Any other case is an extension problem and is reported as such.
//!
//! Nonequivariant groups are computed on the forgotten presentation after
//! cancellation, which in every catalog example is a wedge.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::cells::{forget_class, morphism_stem, Cell, Rational};
use crate::error::{Error, Result};
use crate::forget::{forget_with_map, ForgetMap};
use crate::spectrum::SpectrumPresentation;
use crate::stems::{stem_order, stem_product, StemElement};
use crate::zlinalg::{
    hom_kernel, in_lattice, quotient, smith, FGAbelianGroup, GroupElement, HomKernel,
    IntegerMatrix, Quotient,
};

/// Stem of `[S^k, cell]`.
fn class_stem(equivariant: bool, k: i64, cell: &Cell) -> Result<i64> {
    if equivariant {
        morphism_stem(&Cell::sphere(k), cell)
    } else {
        Ok(k - cell.total_dim()?)
    }
}

fn desuspend(c: &Cell) -> Result<Cell> {
    c.suspend(-1, Rational::from_integer(0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Image of a class on the cells of `B`.
    Included,
    /// A chosen lift of a class on the top cells `E`.
    Lifted,
}

/// Which cells carry a generator: components `(cell label, stem element)` on
/// the presentation the group was computed on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub components: Vec<(String, StemElement)>,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(label, x)| {
                let s = x.to_string();
                let (sign, mag) = s.strip_prefix('-').map_or(("", s.as_str()), |m| ("-", m));
                let mag = mag
                    .strip_prefix('1')
                    .filter(|r| !r.starts_with(|c: char| c.is_ascii_digit()))
                    .unwrap_or(mag);
                format!("{sign}{mag}@{label}")
            })
            .collect();
        let body = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        };
        match self.kind {
            GeneratorKind::Included => write!(f, "{body}"),
            GeneratorKind::Lifted => write!(f, "lift({body})"),
        }
    }
}

/// Summands `(cell, stem)` of a wedge-of-cells homotopy group with nontrivial
/// stem group, in cell order.
fn summands(
    p: &SpectrumPresentation,
    cells: &[usize],
    k: i64,
    shift: bool,
    needed: impl Fn(usize) -> bool,
) -> Result<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    for &i in cells {
        if !needed(i) {
            continue;
        }
        let cell = if shift {
            desuspend(&p.cells()[i].cell)?
        } else {
            p.cells()[i].cell
        };
        let s = class_stem(p.is_equivariant(), k, &cell)?;
        if stem_order(s)? != 1 {
            out.push((i, s));
        }
    }
    Ok(out)
}

fn orders(summands: &[(usize, i64)]) -> Vec<BigInt> {
    summands
        .iter()
        .map(|&(_, s)| BigInt::from(stem_order(s).expect("validated stem")))
        .collect()
}

/// Matrix of `x ↦ f ∘ x` from generators of `[S^j, Σ^{-1}u]` to `[S^j, b]`.
fn induced_matrix(
    p: &SpectrumPresentation,
    sources: &[(usize, i64)],
    targets: &[(usize, i64)],
) -> Result<IntegerMatrix> {
    let mut m = IntegerMatrix::zeros(targets.len(), sources.len());
    for (col, &(u, s)) in sources.iter().enumerate() {
        for (row, &(b, t)) in targets.iter().enumerate() {
            if p.cells()[b].level >= p.cells()[u].level {
                continue;
            }
            let a = p.entry_value(u, b)?;
            if a.is_zero() {
                continue;
            }
            if a.stem() + s != t {
                return Err(Error::UnsupportedMorphismGroup(format!(
                    "composite through the free cell {} into {} is not a product of stems",
                    p.cells()[u].label,
                    p.cells()[b].label
                )));
            }
            let x = stem_product(&a, &StemElement::generator(s)?)?;
            m[(row, col)] = BigInt::from(x.coeff());
        }
    }
    Ok(m)
}

#[derive(Clone, Debug)]
pub struct HomotopyGroup {
    degree: i64,
    equivariant: bool,
    source: SpectrumPresentation,
    working: SpectrumPresentation,
    forget_map: Option<ForgetMap>,
    a: Vec<(usize, i64)>,
    b: Vec<(usize, i64)>,
    d: Vec<(usize, i64)>,
    b_prev: Vec<(usize, i64)>,
    f: IntegerMatrix,
    phi: IntegerMatrix,
    c: Quotient,
    k: HomKernel,
    group: FGAbelianGroup,
    generators: Vec<Generator>,
}

/// `π_k` of a presentation, equivariant (`π_k^T`) or not.
pub fn homotopy_group(
    p: &SpectrumPresentation,
    k: i64,
    equivariant: bool,
) -> Result<HomotopyGroup> {
    p.ensure_resolved()?;
    if equivariant && !p.is_equivariant() {
        return Err(Error::InvalidPresentation(
            "equivariant groups need an equivariant presentation".into(),
        ));
    }
    let (working, forget_map) = if equivariant {
        (p.clone(), None)
    } else {
        let f = forget_with_map(p)?;
        (f.presentation, Some(f.map))
    };
    // E: cells with a nonzero attaching map; the cells they attach to must not be in E
    let mut e_set = BTreeSet::new();
    let mut targets = BTreeSet::new();
    for a in working.attachments() {
        for e in a.entries.iter().filter(|e| e.value != 0) {
            e_set.insert(e.row);
            targets.insert(e.col);
        }
    }
    if let Some(&i) = e_set.intersection(&targets).next() {
        return Err(Error::AmbiguousExtension(format!(
            "{} is attached to lower cells and has cells attached to it",
            working.cells()[i].label
        )));
    }
    let all: Vec<usize> = (0..working.cells().len()).collect();
    let e_cells: Vec<usize> = all.iter().copied().filter(|i| e_set.contains(i)).collect();
    let b_cells: Vec<usize> = all.iter().copied().filter(|i| !e_set.contains(i)).collect();

    let b = summands(&working, &b_cells, k, false, |_| true)?;
    let a = summands(&working, &e_cells, k, true, |_| true)?;
    let f = induced_matrix(&working, &a, &b)?;
    let c = quotient(&orders(&b), &f);

    let d = summands(&working, &e_cells, k - 1, true, |_| true)?;
    // only the cells of B that some top cell is attached to matter for the kernel
    let hit = |i: usize| {
        e_cells
            .iter()
            .any(|&u| working.entry_value(u, i).is_ok_and(|x| !x.is_zero()))
    };
    let b_prev = summands(&working, &b_cells, k - 1, false, hit)?;
    let phi = induced_matrix(&working, &d, &b_prev)?;
    let kern = hom_kernel(&orders(&d), &orders(&b_prev), &phi);

    let (cg, kg) = (&c.group, kern.group());
    if !cg.is_trivial() && !kg.is_trivial() && !kg.is_free() {
        return Err(Error::AmbiguousExtension(format!(
            "0 -> {cg} -> pi_{k} -> {kg} -> 0"
        )));
    }
    let mut torsion = cg.torsion().to_vec();
    torsion.extend(kg.torsion().iter().cloned());

    let mut generators = Vec::new();
    let c_reps = c.reps.clone();
    for j in 0..c_reps.cols() {
        let components = b
            .iter()
            .enumerate()
            .filter(|(row, _)| !c_reps[(*row, j)].is_zero())
            .map(|(row, &(i, s))| {
                Ok((
                    working.cells()[i].label.clone(),
                    StemElement::new(s, to_i64(&c_reps[(row, j)])?)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        generators.push(Generator {
            kind: GeneratorKind::Included,
            components,
        });
    }
    let k_reps = kern.reps();
    for j in 0..k_reps.cols() {
        let components = d
            .iter()
            .enumerate()
            .filter(|(row, _)| !k_reps[(*row, j)].is_zero())
            .map(|(row, &(i, s))| {
                let x = StemElement::new(s, to_i64(&k_reps[(row, j)])?)?;
                Ok((working.cells()[i].label.clone(), x))
            })
            .collect::<Result<Vec<_>>>()?;
        generators.push(Generator {
            kind: GeneratorKind::Lifted,
            components,
        });
    }
    let labels = generators.iter().map(|g| g.to_string()).collect();
    let group = FGAbelianGroup::new(cg.rank() + kg.rank(), torsion)?.with_labels(labels)?;

    Ok(HomotopyGroup {
        degree: k,
        equivariant,
        source: p.clone(),
        working,
        forget_map,
        a,
        b,
        d,
        b_prev,
        f,
        phi,
        c,
        k: kern,
        group,
        generators,
    })
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| {
        Error::InvalidGroupElement(format!("coefficient {x} does not fit in 64 bits"))
    })
}

/// Outcome of the exactness checks on one long exact sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesAudit {
    pub checks: Vec<(&'static str, bool)>,
}

impl LesAudit {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|&(_, ok)| ok)
    }
}

impl HomotopyGroup {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_equivariant(&self) -> bool {
        self.equivariant
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// The presentation the group was requested for.
    pub fn source(&self) -> &SpectrumPresentation {
        &self.source
    }

    /// The presentation the exact sequence was run on (the simplified
    /// forgotten presentation for nonequivariant groups).
    pub fn working(&self) -> &SpectrumPresentation {
        &self.working
    }

    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        self.group.element_i64(coords)
    }

    fn split(&self, x: &GroupElement) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
        if x.group() != &self.group {
            return Err(Error::InvalidGroupElement(format!(
                "element of {} used in {}",
                x.group(),
                self.group
            )));
        }
        let nc = self.c.group.ngens();
        Ok((x.coords()[..nc].to_vec(), x.coords()[nc..].to_vec()))
    }

    /// Components of an included class on the working presentation's cells.
    pub fn cell_components(&self, x: &GroupElement) -> Result<BTreeMap<usize, StemElement>> {
        let (cpart, kpart) = self.split(x)?;
        if kpart.iter().any(|v| !v.is_zero()) {
            return Err(Error::NonCanonicalLift(format!(
                "class {x} is not in the image of the bottom cells"
            )));
        }
        let cx = self.c.group.element(cpart)?;
        let v = self.c.lift(&cx);
        let mut out = BTreeMap::new();
        for (row, &(i, s)) in self.b.iter().enumerate() {
            let e = StemElement::new(s, to_i64(&v[row])?)?;
            if !e.is_zero() {
                out.insert(i, e);
            }
        }
        Ok(out)
    }

    /// The class of the given components on cells of the working
    /// presentation outside `E`.
    pub fn class_of(&self, components: &BTreeMap<usize, StemElement>) -> Result<GroupElement> {
        let mut v = vec![BigInt::zero(); self.b.len()];
        for (&i, x) in components {
            if x.is_zero() {
                continue;
            }
            let expected =
                class_stem(self.equivariant, self.degree, &self.working.cells()[i].cell)?;
            if x.stem() != expected {
                return Err(Error::DegreeMismatch(format!(
                    "component of stem {} on {}, expected {expected}",
                    x.stem(),
                    self.working.cells()[i].label
                )));
            }
            match self.b.iter().position(|&(j, _)| j == i) {
                Some(row) => v[row] = BigInt::from(x.coeff()),
                None => {
                    return Err(Error::NonCanonicalLift(format!(
                        "component on the attaching cell {}",
                        self.working.cells()[i].label
                    )))
                }
            }
        }
        let mut coords = self.c.project(&v).coords().to_vec();
        coords.extend(std::iter::repeat_n(BigInt::zero(), self.k.group().ngens()));
        self.group.element(coords)
    }

    /// Exactness checks for the sequence `A → B → G → D → B'`.
    pub fn les_audit(&self) -> LesAudit {
        let b_orders = orders(&self.b);
        let bp_orders = orders(&self.b_prev);
        let mut checks = Vec::new();

        // B → G after A → B vanishes
        let comp1 = self
            .f
            .columns()
            .iter()
            .all(|col| self.c.project(col).is_zero());
        checks.push(("image of f dies in G", comp1));

        // exactness at B: x - lift(project(x)) lies in im f + orders
        let rel = self.f.hstack(&IntegerMatrix::diagonal(&b_orders));
        let exact_b = (0..self.b.len()).all(|i| {
            let mut e = vec![BigInt::zero(); self.b.len()];
            e[i] = BigInt::from(1);
            let back = self.c.lift(&self.c.project(&e));
            let diff: Vec<BigInt> = e.iter().zip(&back).map(|(x, y)| x - y).collect();
            in_lattice(&rel, &diff)
        });
        checks.push(("exact at B", exact_b));

        // G → D → B' vanishes: lifted generators are in the kernel of f
        let reps = self.k.reps();
        let prev_rel = IntegerMatrix::diagonal(&bp_orders);
        let comp2 =
            (0..reps.cols()).all(|j| in_lattice(&prev_rel, &self.phi.mul_vec(&reps.column(j))));
        checks.push(("lifts are cycles", comp2));

        // exactness at D: a vector maps to zero exactly when it is a
        // combination of the lifts (checked on a box of small vectors)
        let d_orders = orders(&self.d);
        let exact_d = box_vectors(&d_orders, 20_000).iter().all(|v| {
            let cycle = in_lattice(&prev_rel, &self.phi.mul_vec(v));
            cycle == self.k.coords_of(v).is_some()
        });
        checks.push(("exact at D", exact_d));

        // rational ranks: rank G = (free B - rank f) + (free D - rank f')
        let q_rank = |m: &IntegerMatrix, rows: &[BigInt], cols: &[BigInt]| {
            let r: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].is_zero()).collect();
            let c: Vec<usize> = (0..cols.len()).filter(|&i| cols[i].is_zero()).collect();
            smith(&m.select_rows(&r).select_cols(&c)).rank()
        };
        let free = |o: &[BigInt]| o.iter().filter(|x| x.is_zero()).count();
        let expected = free(&b_orders) - q_rank(&self.f, &b_orders, &orders(&self.a))
            + free(&d_orders)
            - q_rank(&self.phi, &bp_orders, &d_orders);
        checks.push(("rank bookkeeping", self.group.rank() == expected));

        LesAudit { checks }
    }
}

/// All vectors of `⊕Z/orders` with free coordinates in `[-2, 2]`, unless
/// there are more than `cap` of them.
fn box_vectors(orders: &[BigInt], cap: usize) -> Vec<Vec<BigInt>> {
    let ranges: Vec<Vec<i64>> = orders
        .iter()
        .map(|o| match o.to_i64() {
            Some(0) => (-2..=2).collect(),
            Some(n) => (0..n).collect(),
            None => vec![0],
        })
        .collect();
    let total = ranges
        .iter()
        .try_fold(1usize, |acc, r| acc.checked_mul(r.len()));
    if total.is_none_or(|t| t > cap) {
        return Vec::new();
    }
    let mut out = vec![Vec::new()];
    for r in &ranges {
        out = out
            .into_iter()
            .flat_map(|v| {
                r.iter().map(move |&x| {
                    let mut w = v.clone();
                    w.push(BigInt::from(x));
                    w
                })
            })
            .collect();
    }
    out
}

/// Image of an equivariant class under the forgetful map, in the
/// nonequivariant group computed on the same presentation.
pub fn forgetful_on_classes(
    eq: &HomotopyGroup,
    x: &GroupElement,
    target: &HomotopyGroup,
) -> Result<GroupElement> {
    if !eq.equivariant || target.equivariant {
        return Err(Error::InvalidGroupElement(
            "forgetful map goes from an equivariant to a nonequivariant group".into(),
        ));
    }
    if eq.source != target.source || eq.degree != target.degree {
        return Err(Error::BasisMismatch(
            "groups were computed on different presentations or degrees".into(),
        ));
    }
    let map = target
        .forget_map
        .as_ref()
        .expect("nonequivariant groups carry their forget map");
    let k = eq.degree;
    let mut parts = BTreeMap::new();
    for (i, v) in eq.cell_components(x)? {
        let sphere = Cell::sphere(k);
        for (_, j, y) in forget_class(&sphere, &eq.working.cells()[i].cell, v)? {
            parts.insert(map.parts(i)[j], y);
        }
    }
    let moved = map.transport(k, &parts)?;
    target.class_of(&moved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{AttachmentEntry, PresentedCell};

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
    fn equivariant_group_of_triangle() {
        let g = homotopy_group(&triangle(), -1, true).unwrap();
        assert_eq!(g.group().to_string(), "Z");
        assert!(g.les_audit().passed());
    }

    #[test]
    fn forgetful_image_is_last_coordinate() {
        let p = triangle();
        let eq = homotopy_group(&p, -1, true).unwrap();
        let ne = homotopy_group(&p, -1, false).unwrap();
        assert_eq!(ne.group().to_string(), "Z/2 + Z/2 + Z");
        let img = forgetful_on_classes(&eq, &eq.group().generator(0), &ne).unwrap();
        assert_eq!(img, ne.element(&[0, 0, 1]).unwrap());
    }

    #[test]
    fn single_free_cell() {
        let p = SpectrumPresentation::wedge(true, vec![(Cell::free(-2), "x".into())]).unwrap();
        let eq = homotopy_group(&p, -1, true).unwrap();
        let ne = homotopy_group(&p, -1, false).unwrap();
        assert_eq!(ne.group().to_string(), "Z/2 + Z");
        let img = forgetful_on_classes(&eq, &eq.group().generator(0), &ne).unwrap();
        assert_eq!(img, ne.element(&[0, 1]).unwrap());
    }

    #[test]
    fn dual_group_in_degree_four() {
        let d = triangle().dualize().unwrap();
        let g = homotopy_group(&d, 4, false).unwrap();
        assert_eq!(g.group().to_string(), "Z/2 + Z/2 + Z/24");
        assert!(g.les_audit().passed());
    }

    #[test]
    fn sphere_groups() {
        let p = SpectrumPresentation::wedge(true, vec![(Cell::sphere(0), "theta".into())]).unwrap();
        assert_eq!(
            homotopy_group(&p, 0, true).unwrap().group().to_string(),
            "Z"
        );
        assert_eq!(
            homotopy_group(&p, 3, false).unwrap().group().to_string(),
            "Z/24"
        );
        assert_eq!(
            homotopy_group(&p, 4, false).unwrap_err(),
            Error::UnsupportedStem(4)
        );
    }

    #[test]
    fn lifted_generator_when_top_cell_survives() {
        // S^0 attached to S^0 by 2: π_1 = Z/2 from the bottom and the kernel
        // part vanishes; π_0 = Z/2.
        let cells = vec![
            PresentedCell::new(Cell::sphere(1), "u", 1),
            PresentedCell::new(Cell::sphere(0), "l", 0),
        ];
        let p = SpectrumPresentation::from_entries(
            false,
            cells,
            vec![AttachmentEntry {
                row: 0,
                col: 1,
                value: 2,
            }],
        )
        .unwrap();
        let g0 = homotopy_group(&p, 0, false).unwrap();
        assert_eq!(g0.group().to_string(), "Z/2");
        assert!(g0.les_audit().passed());
        // π_1: 0 -> Z/2 (η on l) -> π_1 -> ker(2: Z -> Z) = 0
        let g1 = homotopy_group(&p, 1, false).unwrap();
        assert_eq!(g1.group().to_string(), "Z/2");
        assert!(g1.les_audit().passed());
        // π_2: C = Z/2 (η² on l) / 2·η = Z/2, K = ker(Z/2 -> Z/2, times 2) = Z/2: extension
        assert!(matches!(
            homotopy_group(&p, 2, false),
            Err(Error::AmbiguousExtension(_))
        ));
    }
}
