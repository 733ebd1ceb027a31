//! Path algebras of quivers with admissible relations.
//!
//! Paths are stored and written in diagrammatic order: `["a","b"]` traverses
//! arrow `a`, then arrow `b`, and is composable iff `tgt(a) = src(b)`. The
//! algebra product `p * q` is "q then p" (function-composition semantics), so
//! that `A e_v` consists of the paths starting at `v` and is the projective
//! cover of the vertex simple.
//!
//! The basis of the quotient is computed by linear algebra on the span of
//! all paths up to the declared length bound: the two-sided ideal generated
//! by the relations is echelonized with pivots on length-lexicographically
//! larger paths, so the surviving basis is the length-lex smallest one and
//! the degree filtration matches radical powers.

use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraFlags, NoethSource, RadicalProvenance};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::mat::Mat;

#[derive(Debug, Clone)]
pub struct QuiverPresentation {
    pub field: Field,
    pub vertices: Vec<String>,
    /// (name, source vertex index, target vertex index)
    pub arrows: Vec<(String, usize, usize)>,
    /// Each relation is a linear combination of composable paths (arrow
    /// index sequences in diagrammatic order) of length >= 2 sharing source
    /// and target.
    pub relations: Vec<Vec<(Scalar, Vec<usize>)>>,
    pub path_length_bound: usize,
}

/// A path in diagrammatic order; empty = trivial path at `vertex`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Path {
    vertex: usize, // source vertex
    arrows: Vec<usize>,
}

impl Path {
    fn len(&self) -> usize {
        self.arrows.len()
    }
}

struct PathSpace {
    paths: Vec<Path>,
    by_len_start: Vec<usize>, // index of first path of each length
}

impl PathSpace {
    fn index_of(&self, p: &Path) -> Option<usize> {
        let l = p.len();
        if l + 1 >= self.by_len_start.len() {
            return None;
        }
        let (lo, hi) = (self.by_len_start[l], self.by_len_start[l + 1]);
        self.paths[lo..hi].binary_search(p).ok().map(|k| lo + k)
    }
}

fn target_of(pres: &QuiverPresentation, p: &Path) -> usize {
    p.arrows.last().map_or(p.vertex, |&a| pres.arrows[a].2)
}

/// Enumerates composable paths of length 0..=bound in length-lex order.
fn enumerate_paths(pres: &QuiverPresentation, bound: usize, cap: usize) -> Result<PathSpace> {
    let mut paths: Vec<Path> = Vec::new();
    let mut by_len_start = vec![0usize];
    let mut layer: Vec<Path> = (0..pres.vertices.len())
        .map(|v| Path { vertex: v, arrows: vec![] })
        .collect();
    for l in 0..=bound {
        layer.sort();
        paths.extend(layer.iter().cloned());
        by_len_start.push(paths.len());
        if paths.len() > cap {
            return Err(Error::cap(format!(
                "path enumeration exceeded {cap} paths at length {l}"
            )));
        }
        if l == bound {
            break;
        }
        let mut next = Vec::new();
        for p in &layer {
            let t = target_of(pres, p);
            for (ai, arr) in pres.arrows.iter().enumerate() {
                if arr.1 == t {
                    let mut q = p.clone();
                    q.arrows.push(ai);
                    next.push(q);
                }
            }
        }
        layer = next;
    }
    Ok(PathSpace { paths, by_len_start })
}

/// Builds the quotient algebra from an admissible presentation.
pub fn from_quiver(pres: &QuiverPresentation) -> Result<Arc<Algebra>> {
    from_quiver_capped(pres, 20_000)
}

pub fn from_quiver_capped(pres: &QuiverPresentation, path_cap: usize) -> Result<Arc<Algebra>> {
    let field = pres.field;
    if pres.vertices.is_empty() {
        return Err(Error::invalid("quiver needs at least one vertex"));
    }
    for (name, s, t) in &pres.arrows {
        if *s >= pres.vertices.len() || *t >= pres.vertices.len() {
            return Err(Error::invalid(format!("arrow {name} has an unknown endpoint")));
        }
    }
    // admissibility: relation terms are composable paths of length >= 2
    // sharing source and target
    let mut max_rel_len = 0usize;
    let mut rel_spread = 0usize;
    for (ri, rel) in pres.relations.iter().enumerate() {
        if rel.is_empty() {
            return Err(Error::invalid(format!("relation {ri} is empty")));
        }
        let mut st: Option<(usize, usize)> = None;
        let (mut lmin, mut lmax) = (usize::MAX, 0usize);
        for (_, arrows) in rel {
            if arrows.len() < 2 {
                return Err(Error::invalid(format!(
                    "relation {ri} contains a path of length {} (< 2): not admissible",
                    arrows.len()
                )));
            }
            for w in arrows.windows(2) {
                if pres.arrows[w[0]].2 != pres.arrows[w[1]].1 {
                    return Err(Error::invalid(format!("relation {ri} has a non-composable path")));
                }
            }
            let s = pres.arrows[arrows[0]].1;
            let t = pres.arrows[*arrows.last().unwrap()].2;
            match st {
                None => st = Some((s, t)),
                Some(x) if x != (s, t) => {
                    return Err(Error::invalid(format!(
                        "relation {ri} mixes paths with different sources/targets"
                    )))
                }
                _ => {}
            }
            lmin = lmin.min(arrows.len());
            lmax = lmax.max(arrows.len());
        }
        max_rel_len = max_rel_len.max(lmax);
        rel_spread = rel_spread.max(lmax - lmin);
    }

    let bound = pres.path_length_bound;
    if bound < max_rel_len {
        return Err(Error::invalid(format!(
            "path_length_bound {bound} is below the longest relation term {max_rel_len}"
        )));
    }
    let space = enumerate_paths(pres, bound, path_cap)?;
    let np = space.paths.len();

    let path_vec = |terms: &[(Scalar, Vec<usize>)], left: &Path, right_ok: bool| -> Option<Vec<Scalar>> {
        // assembles sum of coeff * (left . term . right) with right trivial here
        let _ = right_ok;
        let mut v = vec![field.zero(); np];
        for (c, arrows) in terms {
            let mut p = left.clone();
            p.arrows.extend_from_slice(arrows);
            let idx = space.index_of(&p)?;
            v[idx] = v[idx].add(c);
        }
        Some(v)
    };

    // ideal generators u . r . w for all composable u, w with
    // |u| + maxlen(r) + |w| <= bound
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    for rel in &pres.relations {
        let rl = rel.iter().map(|(_, a)| a.len()).max().unwrap();
        let src = pres.arrows[rel[0].1[0]].1;
        let tgt = pres.arrows[*rel[0].1.last().unwrap()].2;
        for u in &space.paths {
            if u.len() + rl > bound || target_of(pres, u) != src {
                continue;
            }
            // base = u . r
            let Some(base) = path_vec(rel, u, true) else { continue };
            // now append all composable right tails w with |u|+rl+|w| <= bound
            // breadth-first over suffixes
            let mut frontier: Vec<(Vec<Scalar>, usize)> = vec![(base, tgt)];
            let mut budget = bound - u.len() - rl;
            loop {
                for (v, _) in &frontier {
                    gens.push(v.clone());
                }
                if budget == 0 {
                    break;
                }
                budget -= 1;
                let mut next = Vec::new();
                for (v, end) in &frontier {
                    for (ai, arr) in pres.arrows.iter().enumerate() {
                        if arr.1 != *end {
                            continue;
                        }
                        // multiply on the right by arrow ai: shift each path
                        let mut w = vec![field.zero(); np];
                        let mut ok = true;
                        for (idx, c) in v.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let mut p = space.paths[idx].clone();
                            p.arrows.push(ai);
                            match space.index_of(&p) {
                                Some(k) => w[k] = w[k].add(c),
                                None => {
                                    ok = false;
                                    break;
                                }
                            }
                        }
                        if ok {
                            next.push((w, arr.2));
                        }
                    }
                }
                frontier = next;
                if frontier.is_empty() {
                    break;
                }
            }
        }
    }

    // echelonize with reversed column order so pivots sit on length-lex
    // larger paths and the surviving basis is the length-lex smallest
    let rev = |v: &[Scalar]| -> Vec<Scalar> { v.iter().rev().cloned().collect() };
    let ideal_rev = if gens.is_empty() {
        Mat::zeros(field, 0, np)
    } else {
        Mat::from_fn(field, gens.len(), np, |i, j| rev(&gens[i])[j].clone()).row_space_echelon()
    };
    let reduce_rev = |v: &[Scalar]| -> Vec<Scalar> {
        let r = crate::mat::subspace::reduce(&ideal_rev, &rev(v));
        r.iter().rev().cloned().collect()
    };

    // saturation length: least l with every length-l path in the ideal
    let mut sat: Option<usize> = None;
    for l in 1..=bound {
        let (lo, hi) = (space.by_len_start[l], space.by_len_start[l + 1]);
        let all_in = (lo..hi).all(|k| {
            let mut v = vec![field.zero(); np];
            v[k] = field.one();
            reduce_rev(&v).iter().all(|s| s.is_zero())
        });
        if all_in && lo < hi {
            sat = Some(l);
            break;
        }
        if lo == hi {
            // no paths of this length at all: the quiver has no long paths
            sat = Some(l);
            break;
        }
    }
    let Some(sat) = sat else {
        return Err(Error::invalid(format!(
            "not finite-dimensional below bound: paths of length {bound} survive the relations"
        )));
    };
    if 2 * (sat.saturating_sub(1)) + rel_spread > bound {
        return Err(Error::invalid(format!(
            "path_length_bound {bound} too small to multiply the basis reliably; need at least {}",
            2 * (sat - 1) + rel_spread
        )));
    }

    // basis: surviving paths of length < sat (free columns of the ideal)
    let reduced_unit_vecs: Vec<Option<Vec<Scalar>>> = (0..np)
        .map(|k| {
            if space.paths[k].len() >= sat {
                return None;
            }
            let mut v = vec![field.zero(); np];
            v[k] = field.one();
            Some(reduce_rev(&v))
        })
        .collect();
    let mut basis_idx: Vec<usize> = Vec::new();
    for k in 0..np {
        if let Some(r) = &reduced_unit_vecs[k] {
            // k survives iff its own coordinate survives reduction
            if !r[k].is_zero() {
                basis_idx.push(k);
            }
        }
    }
    // sanity: reductions of basis paths are themselves (free coordinates)
    for &k in &basis_idx {
        let r = reduced_unit_vecs[k].as_ref().unwrap();
        let mut expect = vec![field.zero(); np];
        expect[k] = field.one();
        if r != &expect {
            return Err(Error::invariant("ideal echelon did not separate the basis"));
        }
    }

    let dim = basis_idx.len();
    let coord_of = |k: usize| basis_idx.iter().position(|&b| b == k);
    let to_basis_coords = |v: &[Scalar]| -> Result<Vec<Scalar>> {
        let red = reduce_rev(v);
        let mut out = vec![field.zero(); dim];
        for (k, c) in red.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match coord_of(k) {
                Some(j) => out[j] = c.clone(),
                None => {
                    return Err(Error::invariant(
                        "reduction produced a non-basis path component",
                    ))
                }
            }
        }
        Ok(out)
    };

    // structure constants: p_i * p_j = (j then i) when composable
    let mut mult = vec![vec![vec![field.zero(); dim]; dim]; dim];
    for (bi, &ki) in basis_idx.iter().enumerate() {
        for (bj, &kj) in basis_idx.iter().enumerate() {
            let (pi, pj) = (&space.paths[ki], &space.paths[kj]);
            if target_of(pres, pj) != pi.vertex {
                continue; // zero product
            }
            let mut prod = pj.clone();
            prod.arrows.extend_from_slice(&pi.arrows);
            let mut v = vec![field.zero(); np];
            match space.index_of(&prod) {
                Some(k) => v[k] = field.one(),
                None => {
                    // product longer than bound: provably in the ideal once
                    // saturation holds (it contains a length-sat subpath)
                    continue;
                }
            }
            mult[bi][bj] = to_basis_coords(&v)?;
        }
    }

    let labels: Vec<String> = basis_idx
        .iter()
        .map(|&k| {
            let p = &space.paths[k];
            if p.arrows.is_empty() {
                format!("e_{}", pres.vertices[p.vertex])
            } else {
                p.arrows.iter().map(|&a| pres.arrows[a].0.clone()).collect::<Vec<_>>().join("")
            }
        })
        .collect();

    // unit = sum of trivial paths; idempotents = the trivial paths
    let mut unit = vec![field.zero(); dim];
    let mut idems = Vec::new();
    for (b, &k) in basis_idx.iter().enumerate() {
        if space.paths[k].arrows.is_empty() {
            unit[b] = field.one();
            let mut e = vec![field.zero(); dim];
            e[b] = field.one();
            idems.push(e);
        }
    }
    // radical = basis paths of length >= 1 (image of the arrow ideal)
    let radical: Vec<Vec<Scalar>> = basis_idx
        .iter()
        .enumerate()
        .filter(|(_, &k)| !space.paths[k].arrows.is_empty())
        .map(|(b, _)| {
            let mut v = vec![field.zero(); dim];
            v[b] = field.one();
            v
        })
        .collect();

    let flags = AlgebraFlags {
        self_injective: None,
        noetherian_ext: NoethSource::Unverified,
        noeth_note: None,
        radical_provenance: RadicalProvenance::Derived,
    };
    let name = format!(
        "quiver({}v,{}a,{}r)",
        pres.vertices.len(),
        pres.arrows.len(),
        pres.relations.len()
    );
    Ok(Arc::new(Algebra::new(
        field,
        labels,
        mult,
        unit,
        radical,
        idems,
        flags,
        name,
        64,
    )?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn loop_quiver(relation_power: usize, bound: usize) -> QuiverPresentation {
        QuiverPresentation {
            field: f2(),
            vertices: vec!["v".into()],
            arrows: vec![("x".into(), 0, 0)],
            relations: vec![vec![(f2().one(), vec![0; relation_power])]],
            path_length_bound: bound,
        }
    }

    #[test]
    fn dual_numbers_from_quiver() {
        let a = from_quiver(&loop_quiver(2, 6)).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.radical_dim(), 1);
        assert_eq!(a.loewy_length().unwrap(), 2);
    }

    #[test]
    fn exterior_two_from_quiver() {
        // one vertex, loops x,y; relations x^2, y^2, xy+yx over F_2
        let one = f2().one();
        let pres = QuiverPresentation {
            field: f2(),
            vertices: vec!["v".into()],
            arrows: vec![("x".into(), 0, 0), ("y".into(), 0, 0)],
            relations: vec![
                vec![(one.clone(), vec![0, 0])],
                vec![(one.clone(), vec![1, 1])],
                vec![(one.clone(), vec![0, 1]), (one.clone(), vec![1, 0])],
            ],
            path_length_bound: 6,
        };
        let a = from_quiver(&pres).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.loewy_length().unwrap(), 3);
        // matches the preset algebra up to basis bookkeeping
        let e = crate::algebra::exterior(2, 2).unwrap();
        assert_eq!(a.radical_power_dims(), e.radical_power_dims());
    }

    #[test]
    fn free_loop_not_finite_dimensional() {
        let pres = QuiverPresentation {
            field: f2(),
            vertices: vec!["v".into()],
            arrows: vec![("x".into(), 0, 0)],
            relations: vec![],
            path_length_bound: 5,
        };
        let err = from_quiver(&pres).unwrap_err();
        assert!(err.to_string().contains("not finite-dimensional below bound"));
    }

    #[test]
    fn non_admissible_rejected() {
        let mut pres = loop_quiver(2, 6);
        pres.relations.push(vec![(f2().one(), vec![0])]); // length-1 path
        assert!(from_quiver(&pres).is_err());
    }

    #[test]
    fn a2_quiver_hereditary() {
        // 1 --a--> 2, no relations: dim 3 (e1, e2, a)
        let pres = QuiverPresentation {
            field: f2(),
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![("a".into(), 0, 1)],
            relations: vec![],
            path_length_bound: 4,
        };
        let a = from_quiver(&pres).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.num_projectives(), 2);
        assert_eq!(a.loewy_length().unwrap(), 2);
        // simple top is 2-dimensional (two vertices)
        let t = crate::algebra::simple_top(&a);
        assert_eq!(t.dim(), 2);
        t.validate().unwrap();
    }

    #[test]
    fn two_vertex_no_arrows_semisimple() {
        let pres = QuiverPresentation {
            field: f2(),
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![],
            relations: vec![],
            path_length_bound: 2,
        };
        let a = from_quiver(&pres).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.is_semisimple());
        assert_eq!(a.loewy_length().unwrap(), 1);
    }
}
