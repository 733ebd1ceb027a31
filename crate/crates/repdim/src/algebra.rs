//! Finite-dimensional associative algebras and their modules.
//!
//! An [`Algebra`] is given by structure constants over a prime field or Q,
//! together with a verified radical basis and a complete orthogonal set of
//! primitive idempotents. Projective covers, tops, Loewy length and the
//! enveloping algebra all run off this data.
//!
//! Modules come in two representations: `Dense` (explicit action matrices,
//! for arbitrary small modules) and `Blocks` (finite direct sums of the
//! indecomposable projectives A·e_i, which is what resolution terms are).
//! The block form never materializes its action matrices; large resolutions
//! stay cheap because only the differentials are dense.

use std::sync::Arc;

use crate::digest::Hasher;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::mat::{subspace, Mat};

/// How the radical basis was obtained, and how far it is trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadicalProvenance {
    /// Arrow ideal of an admissible quiver presentation, or a preset formula.
    Derived,
    /// Declared by the user and fully verified (nilpotent two-sided ideal
    /// with split semisimple quotient).
    VerifiedSplit,
    /// Declared and verified nilpotent two-sided, but maximality rests on
    /// the user's word.
    UserAsserted,
}

/// Source of the "Ext algebra is noetherian over a central ring" hypothesis
/// used by the bound chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoethSource {
    PresetTheorem,
    UserAsserted,
    Unverified,
}

#[derive(Debug, Clone)]
pub struct AlgebraFlags {
    /// Known self-injectivity (preset-provided or user-asserted); None means
    /// unknown.
    pub self_injective: Option<bool>,
    pub noetherian_ext: NoethSource,
    /// Human-readable justification for the preset-theorem flag.
    pub noeth_note: Option<String>,
    pub radical_provenance: RadicalProvenance,
}

impl Default for AlgebraFlags {
    fn default() -> Self {
        AlgebraFlags {
            self_injective: None,
            noetherian_ext: NoethSource::Unverified,
            noeth_note: None,
            radical_provenance: RadicalProvenance::UserAsserted,
        }
    }
}

/// A column basis of a subspace together with the coordinate rows at which
/// it is the identity, so coordinates of vectors in the span are read off
/// rather than solved for.
#[derive(Debug, Clone)]
pub struct ColBasis {
    pub mat: Mat,
    pub coord_rows: Vec<usize>,
}

impl ColBasis {
    /// Builds from any spanning set of columns; the result is canonical.
    pub fn from_columns(m: &Mat) -> ColBasis {
        let ech = m.transpose().row_space_echelon();
        let coord_rows = subspace::pivot_cols(&ech);
        ColBasis { mat: ech.transpose(), coord_rows }
    }

    pub fn dim(&self) -> usize {
        self.mat.cols()
    }

    /// Coordinates of an ambient vector known to lie in the span.
    pub fn coords_of(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.coord_rows.iter().map(|&r| v[r].clone()).collect()
    }

    pub fn embed(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let field = self.mat.field();
        let mut out = vec![field.zero(); self.mat.rows()];
        for (j, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..self.mat.rows() {
                let e = self.mat.get(i, j);
                if !e.is_zero() {
                    out[i] = out[i].add(&c.mul(&e));
                }
            }
        }
        out
    }
}

/// Per-idempotent data for the indecomposable projective A·e.
#[derive(Debug, Clone)]
pub struct ProjInfo {
    pub basis: ColBasis,
    /// Coordinates of the generator e inside the block basis.
    pub gen_coords: Vec<Scalar>,
    /// Echelon row basis of the radical submodule, in block coordinates.
    pub radical_rows: Mat,
}

#[derive(Debug)]
pub struct Algebra {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    /// left_mult[i] is the matrix of v |-> b_i * v in basis coordinates.
    left_mult: Vec<Mat>,
    unit: Vec<Scalar>,
    /// Echelon row basis of the radical.
    radical_rows: Mat,
    /// Complete orthogonal primitive idempotents, as coordinate vectors.
    idempotents: Vec<Vec<Scalar>>,
    projectives: Vec<ProjInfo>,
    pub flags: AlgebraFlags,
    name: String,
    digest: String,
}

impl Algebra {
    /// Builds and fully validates an algebra from structure data.
    ///
    /// `mult` gives the coordinates of b_i * b_j. Associativity is checked
    /// exhaustively up to `assoc_cap` basis dimension, after which a seeded
    /// random sample of triples is used (the exhaustive check is dim^5).
    pub fn new(
        field: Field,
        labels: Vec<String>,
        mult: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        radical_span: Vec<Vec<Scalar>>,
        idempotents: Vec<Vec<Scalar>>,
        flags: AlgebraFlags,
        name: String,
        assoc_cap: usize,
    ) -> Result<Algebra> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::invalid("algebra dimension must be at least 1"));
        }
        if mult.len() != dim || mult.iter().any(|r| r.len() != dim) {
            return Err(Error::invalid("structure constant table has wrong shape"));
        }
        for row in &mult {
            for v in row {
                if v.len() != dim {
                    return Err(Error::invalid("structure constant vector has wrong length"));
                }
            }
        }
        let left_mult: Vec<Mat> = (0..dim)
            .map(|i| Mat::from_fn(field, dim, dim, |k, j| mult[i][j][k].clone()))
            .collect();

        let radical_rows = if radical_span.is_empty() {
            Mat::zeros(field, 0, dim)
        } else {
            Mat::from_fn(field, radical_span.len(), dim, |i, j| radical_span[i][j].clone())
                .row_space_echelon()
        };

        let mut alg = Algebra {
            field,
            dim,
            labels,
            left_mult,
            unit,
            radical_rows,
            idempotents,
            projectives: Vec::new(),
            flags,
            name,
            digest: String::new(),
        };
        alg.validate_unit()?;
        alg.validate_associativity(assoc_cap)?;
        alg.validate_radical()?;
        alg.validate_idempotents()?;
        alg.projectives = alg.build_projectives()?;
        alg.digest = alg.compute_digest();
        Ok(alg)
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn digest(&self) -> &str {
        &self.digest
    }
    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }
    pub fn radical_rows(&self) -> &Mat {
        &self.radical_rows
    }
    pub fn radical_dim(&self) -> usize {
        self.radical_rows.rows()
    }
    pub fn idempotents(&self) -> &[Vec<Scalar>] {
        &self.idempotents
    }
    pub fn projective(&self, idx: usize) -> &ProjInfo {
        &self.projectives[idx]
    }
    pub fn num_projectives(&self) -> usize {
        self.projectives.len()
    }
    pub fn is_local(&self) -> bool {
        self.radical_dim() + 1 == self.dim
    }
    pub fn is_semisimple(&self) -> bool {
        self.radical_dim() == 0
    }

    /// Coordinates of b_i * b_j.
    pub fn mult_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.left_mult[i].column(j)
    }

    /// Product of two elements in coordinates.
    pub fn mult(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let bi_b = self.left_mult[i].mul(&Mat::col_vec(self.field, b));
            for k in 0..self.dim {
                let e = bi_b.get(k, 0);
                if !e.is_zero() {
                    out[k] = out[k].add(&ai.mul(&e));
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by an arbitrary element.
    pub fn left_mult_of(&self, a: &[Scalar]) -> Mat {
        let mut out = Mat::zeros(self.field, self.dim, self.dim);
        for (i, ai) in a.iter().enumerate() {
            if !ai.is_zero() {
                out = out.add(&self.left_mult[i].scale(ai));
            }
        }
        out
    }

    /// Matrix of right multiplication by an arbitrary element.
    pub fn right_mult_of(&self, a: &[Scalar]) -> Mat {
        Mat::from_fn(self.field, self.dim, self.dim, |k, i| {
            // column i: coords of b_i * a
            let mut acc = self.field.zero();
            for (j, aj) in a.iter().enumerate() {
                if !aj.is_zero() {
                    acc = acc.add(&aj.mul(&self.left_mult[i].get(k, j)));
                }
            }
            acc
        })
    }

    fn validate_unit(&self) -> Result<()> {
        if self.unit.len() != self.dim {
            return Err(Error::invalid("unit vector has wrong length"));
        }
        let lm = self.left_mult_of(&self.unit);
        let rm = self.right_mult_of(&self.unit);
        let id = Mat::identity(self.field, self.dim);
        if lm != id || rm != id {
            return Err(Error::invalid("unit laws fail for the declared unit"));
        }
        Ok(())
    }

    fn validate_associativity(&self, cap: usize) -> Result<()> {
        let n = self.dim;
        let check = |i: usize, j: usize, k: usize| -> bool {
            // (b_i b_j) b_k == b_i (b_j b_k)
            let ij = self.mult_basis(i, j);
            let jk = self.mult_basis(j, k);
            let mut lhs = vec![self.field.zero(); n];
            for (l, c) in ij.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let lk = self.mult_basis(l, k);
                for t in 0..n {
                    if !lk[t].is_zero() {
                        lhs[t] = lhs[t].add(&c.mul(&lk[t]));
                    }
                }
            }
            let mut rhs = vec![self.field.zero(); n];
            for (l, c) in jk.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let il = self.mult_basis(i, l);
                for t in 0..n {
                    if !il[t].is_zero() {
                        rhs[t] = rhs[t].add(&c.mul(&il[t]));
                    }
                }
            }
            lhs == rhs
        };
        if n <= cap {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if !check(i, j, k) {
                            return Err(Error::invalid(format!(
                                "associativity fails at basis triple ({i},{j},{k})"
                            )));
                        }
                    }
                }
            }
        } else {
            // seeded sample; full check is dim^5 and not run above the cap
            let mut s: u64 = 0x5eed_a55e;
            let mut next = || {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (s >> 33) as usize
            };
            for _ in 0..4096 {
                let (i, j, k) = (next() % n, next() % n, next() % n);
                if !check(i, j, k) {
                    return Err(Error::invalid(format!(
                        "associativity fails at basis triple ({i},{j},{k})"
                    )));
                }
            }
        }
        Ok(())
    }

    fn validate_radical(&self) -> Result<()> {
        // two-sided ideal: closed under left and right multiplication by basis elements
        for r in 0..self.radical_rows.rows() {
            let v = self.radical_rows.row(r);
            for i in 0..self.dim {
                let lv = self.left_mult_of(&unit_vec(self.field, self.dim, i));
                let left = lv.mul(&Mat::col_vec(self.field, &v)).column(0);
                if !subspace::contains(&self.radical_rows, &left) {
                    return Err(Error::invalid(
                        "declared radical is not a left ideal".to_string(),
                    ));
                }
                let right = self
                    .right_mult_of(&unit_vec(self.field, self.dim, i))
                    .mul(&Mat::col_vec(self.field, &v))
                    .column(0);
                if !subspace::contains(&self.radical_rows, &right) {
                    return Err(Error::invalid(
                        "declared radical is not a right ideal".to_string(),
                    ));
                }
            }
        }
        // nilpotent within dim steps
        let mut power = self.radical_rows.clone();
        for _ in 0..self.dim {
            if power.rows() == 0 {
                return Ok(());
            }
            power = self.ideal_product(&self.radical_rows, &power);
        }
        Err(Error::invalid(
            "declared radical is not nilpotent within dim(A) steps",
        ))
    }

    /// Echelon row basis of span{a*b : a in rows(x), b in rows(y)}.
    fn ideal_product(&self, x: &Mat, y: &Mat) -> Mat {
        let mut rows = Vec::new();
        for i in 0..x.rows() {
            let a = x.row(i);
            let la = self.left_mult_of(&a);
            for j in 0..y.rows() {
                let b = y.row(j);
                rows.push(la.mul(&Mat::col_vec(self.field, &b)).column(0));
            }
        }
        if rows.is_empty() {
            return Mat::zeros(self.field, 0, self.dim);
        }
        Mat::from_fn(self.field, rows.len(), self.dim, |i, j| rows[i][j].clone()).row_space_echelon()
    }

    fn validate_idempotents(&self) -> Result<()> {
        if self.idempotents.is_empty() {
            return Err(Error::invalid(
                "no idempotent set available; resolutions need one (quiver input, preset, a local or declared-idempotent algebra)",
            ));
        }
        let mut sum = vec![self.field.zero(); self.dim];
        for (a, e) in self.idempotents.iter().enumerate() {
            if e.len() != self.dim {
                return Err(Error::invalid("idempotent vector has wrong length"));
            }
            let ee = self.mult(e, e);
            if &ee != e {
                return Err(Error::invalid(format!("declared idempotent {a} is not idempotent")));
            }
            for (b, f) in self.idempotents.iter().enumerate() {
                if a != b {
                    let ef = self.mult(e, f);
                    if ef.iter().any(|s| !s.is_zero()) {
                        return Err(Error::invalid(format!(
                            "idempotents {a} and {b} are not orthogonal"
                        )));
                    }
                }
            }
            for k in 0..self.dim {
                sum[k] = sum[k].add(&e[k]);
            }
        }
        if sum != self.unit {
            return Err(Error::invalid("idempotents do not sum to the unit"));
        }
        Ok(())
    }

    fn build_projectives(&self) -> Result<Vec<ProjInfo>> {
        let mut out = Vec::new();
        for (t, e) in self.idempotents.iter().enumerate() {
            // A*e = column space of right multiplication by e
            let re = self.right_mult_of(e);
            let basis = ColBasis::from_columns(&re);
            if basis.dim() == 0 {
                return Err(Error::invalid(format!("idempotent {t} generates a zero projective")));
            }
            let gen_coords = basis.coords_of(e);
            // radical of the block: rows r*b for radical elements r, block basis b
            let mut rad = Vec::new();
            for ri in 0..self.radical_rows.rows() {
                let lm = self.left_mult_of(&self.radical_rows.row(ri));
                for c in 0..basis.dim() {
                    let col = basis.mat.column(c);
                    let img = lm.mul(&Mat::col_vec(self.field, &col)).column(0);
                    rad.push(basis.coords_of(&img));
                }
            }
            let radical_rows = if rad.is_empty() {
                Mat::zeros(self.field, 0, basis.dim())
            } else {
                Mat::from_fn(self.field, rad.len(), basis.dim(), |i, j| rad[i][j].clone())
                    .row_space_echelon()
            };
            // primitivity in the split sense: the top of A*e is one-dimensional
            if basis.dim() - radical_rows.rows() != 1 {
                return Err(Error::invalid(format!(
                    "idempotent {t} is not primitive with one-dimensional top (top dim {}); non-split or non-primitive decompositions are not supported",
                    basis.dim() - radical_rows.rows()
                )));
            }
            out.push(ProjInfo { basis, gen_coords, radical_rows });
        }
        Ok(out)
    }

    fn compute_digest(&self) -> String {
        let mut h = Hasher::new("algebra");
        h.str(&format!("{}", self.field));
        h.u64(self.dim as u64);
        for m in &self.left_mult {
            h.mat(m);
        }
        for s in &self.unit {
            h.scalar(s);
        }
        h.mat(&self.radical_rows);
        h.finish()
    }

    /// Least n with radical^n = 0. Semisimple algebras return 1.
    pub fn loewy_length(&self) -> Result<usize> {
        let mut power = self.radical_rows.clone();
        let mut n = 1usize;
        while power.rows() > 0 {
            if n > self.dim {
                return Err(Error::invariant(
                    "radical powers did not vanish within dim(A) steps",
                ));
            }
            power = self.ideal_product(&self.radical_rows, &power);
            n += 1;
        }
        Ok(n)
    }

    /// Loewy (radical) filtration ranks: dims of radical powers r^0=A, r^1, ...
    pub fn radical_power_dims(&self) -> Vec<usize> {
        let mut out = vec![self.dim];
        let mut power = self.radical_rows.clone();
        while power.rows() > 0 {
            out.push(power.rows());
            power = self.ideal_product(&self.radical_rows, &power);
        }
        out
    }

    /// Dimension of the center.
    pub fn center_dim(&self) -> usize {
        // x central  <=>  L_i x = R_i x for all basis elements i
        let mut rows = Vec::new();
        for i in 0..self.dim {
            let ei = unit_vec(self.field, self.dim, i);
            let diff = self.left_mult_of(&ei).sub(&self.right_mult_of(&ei));
            for r in 0..self.dim {
                rows.push(diff.row(r));
            }
        }
        let m = Mat::from_fn(self.field, rows.len(), self.dim, |i, j| rows[i][j].clone());
        m.kernel_basis().cols()
    }

    /// Whether the semisimple quotient A/r splits as a product of copies of
    /// the ground field. True for every supported idempotent set by the
    /// primitivity check, recorded here for report flags.
    pub fn has_split_top(&self) -> bool {
        self.dim - self.radical_dim() == self.idempotents.len()
    }
}

pub fn unit_vec(field: Field, dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}

// ---------------------------------------------------------------------------
// Modules
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
enum ModRepr {
    Dense { action: Vec<Mat> },
    /// Direct sum of indecomposable projectives A e_{summands[j]}.
    Blocks { summands: Vec<usize> },
}

#[derive(Debug, Clone)]
pub struct Module {
    algebra: Arc<Algebra>,
    dim: usize,
    repr: ModRepr,
    label: String,
}

impl Module {
    pub fn dense(algebra: Arc<Algebra>, action: Vec<Mat>, label: impl Into<String>) -> Module {
        assert_eq!(action.len(), algebra.dim());
        let dim = if action.is_empty() { 0 } else { action[0].rows() };
        for m in &action {
            assert_eq!(m.rows(), dim);
            assert_eq!(m.cols(), dim);
        }
        Module { algebra, dim, repr: ModRepr::Dense { action }, label: label.into() }
    }

    pub fn zero(algebra: Arc<Algebra>) -> Module {
        let action = (0..algebra.dim())
            .map(|_| Mat::zeros(algebra.field(), 0, 0))
            .collect();
        Module::dense(algebra, action, "0")
    }

    /// The regular module A, as the block module on the full idempotent set.
    pub fn regular(algebra: Arc<Algebra>) -> Module {
        let summands: Vec<usize> = (0..algebra.num_projectives()).collect();
        Module::blocks(algebra, summands, "A")
    }

    pub fn blocks(algebra: Arc<Algebra>, summands: Vec<usize>, label: impl Into<String>) -> Module {
        let dim = summands.iter().map(|&t| algebra.projective(t).basis.dim()).sum();
        Module { algebra, dim, repr: ModRepr::Blocks { summands }, label: label.into() }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn set_label(&mut self, l: impl Into<String>) {
        self.label = l.into();
    }

    pub fn is_blocks(&self) -> bool {
        matches!(self.repr, ModRepr::Blocks { .. })
    }

    /// Projective summand indices when in block form.
    pub fn summands(&self) -> Option<&[usize]> {
        match &self.repr {
            ModRepr::Blocks { summands } => Some(summands),
            ModRepr::Dense { .. } => None,
        }
    }

    /// Offset of each block in the coordinate space.
    pub fn block_offsets(&self) -> Vec<usize> {
        match &self.repr {
            ModRepr::Blocks { summands } => {
                let mut off = Vec::with_capacity(summands.len());
                let mut acc = 0usize;
                for &t in summands {
                    off.push(acc);
                    acc += self.algebra.projective(t).basis.dim();
                }
                off
            }
            ModRepr::Dense { .. } => vec![],
        }
    }

    /// Applies the basis element b_i to a coordinate vector.
    pub fn apply_basis(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim);
        match &self.repr {
            ModRepr::Dense { action } => action[i].mul(&Mat::col_vec(self.algebra.field(), v)).column(0),
            ModRepr::Blocks { summands } => {
                let field = self.algebra.field();
                let mut out = vec![field.zero(); self.dim];
                let mut off = 0usize;
                for &t in summands {
                    let blk = &self.algebra.projective(t).basis;
                    let d = blk.dim();
                    let amb = blk.embed(&v[off..off + d].iter().cloned().collect::<Vec<_>>());
                    let img = self
                        .algebra
                        .left_mult_of(&unit_vec(field, self.algebra.dim(), i))
                        .mul(&Mat::col_vec(field, &amb))
                        .column(0);
                    let coords = blk.coords_of(&img);
                    out[off..off + d].clone_from_slice(&coords);
                    off += d;
                }
                out
            }
        }
    }

    /// Applies an arbitrary algebra element (by coordinates).
    pub fn apply(&self, a: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let field = self.algebra.field();
        let mut out = vec![field.zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let w = self.apply_basis(i, v);
            for k in 0..self.dim {
                if !w[k].is_zero() {
                    out[k] = out[k].add(&ai.mul(&w[k]));
                }
            }
        }
        out
    }

    /// Materializes the action matrix of b_i (small modules only).
    pub fn action_mat(&self, i: usize) -> Mat {
        match &self.repr {
            ModRepr::Dense { action } => action[i].clone(),
            ModRepr::Blocks { .. } => {
                let field = self.algebra.field();
                Mat::from_fn(field, self.dim, self.dim, |r, c| {
                    let v = unit_vec(field, self.dim, c);
                    self.apply_basis(i, &v)[r].clone()
                })
            }
        }
    }

    /// Checks the module axioms: unit acts as identity and the action is
    /// compatible with the structure constants on all basis pairs.
    pub fn validate(&self) -> Result<()> {
        let field = self.algebra.field();
        let n = self.algebra.dim();
        let id = Mat::identity(field, self.dim);
        let mats: Vec<Mat> = (0..n).map(|i| self.action_mat(i)).collect();
        let mut unit_action = Mat::zeros(field, self.dim, self.dim);
        for (i, c) in self.algebra.unit().iter().enumerate() {
            if !c.is_zero() {
                unit_action = unit_action.add(&mats[i].scale(c));
            }
        }
        if unit_action != id {
            return Err(Error::invalid(format!(
                "module {}: unit does not act as identity",
                self.label
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = mats[i].mul(&mats[j]);
                let mut rhs = Mat::zeros(field, self.dim, self.dim);
                for (k, c) in self.algebra.mult_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        rhs = rhs.add(&mats[k].scale(c));
                    }
                }
                if lhs != rhs {
                    return Err(Error::invalid(format!(
                        "module {}: action incompatible with structure constants at pair ({i},{j})",
                        self.label
                    )));
                }
            }
        }
        Ok(())
    }

    /// Echelon row basis of the radical submodule r*M.
    pub fn radical_submodule(&self) -> Mat {
        let field = self.algebra.field();
        let rad = self.algebra.radical_rows();
        let mut rows = Vec::new();
        for ri in 0..rad.rows() {
            let r = rad.row(ri);
            for c in 0..self.dim {
                rows.push(self.apply(&r, &unit_vec(field, self.dim, c)));
            }
        }
        if rows.is_empty() {
            return Mat::zeros(field, 0, self.dim);
        }
        Mat::from_fn(field, rows.len(), self.dim, |i, j| rows[i][j].clone()).row_space_echelon()
    }

    /// Quotient by a submodule given as an echelon row basis. Returns the
    /// quotient module and the projection matrix.
    pub fn quotient_by(&self, sub_rows: &Mat, label: impl Into<String>) -> (Module, Mat) {
        let field = self.algebra.field();
        let free = subspace::free_cols(sub_rows);
        let qdim = free.len();
        // projection: reduce against the echelon rows, read free coordinates
        let proj = Mat::from_fn(field, qdim, self.dim, |qi, j| {
            let v = unit_vec(field, self.dim, j);
            let red = subspace::reduce(sub_rows, &v);
            red[free[qi]].clone()
        });
        let action = (0..self.algebra.dim())
            .map(|i| {
                Mat::from_fn(field, qdim, qdim, |r, c| {
                    let lifted = unit_vec(field, self.dim, free[c]);
                    let img = self.apply_basis(i, &lifted);
                    let red = subspace::reduce(sub_rows, &img);
                    red[free[r]].clone()
                })
            })
            .collect();
        (
            Module::dense(self.algebra.clone(), action, label),
            proj,
        )
    }

    /// The top M / r M with its projection.
    pub fn top(&self) -> (Module, Mat) {
        let rad = self.radical_submodule();
        self.quotient_by(&rad, format!("top({})", self.label))
    }

    /// Submodule spanned by the columns of `emb` (closed under the action by
    /// construction of callers); returns the dense module on the canonical
    /// basis plus the embedding matrix.
    pub fn submodule(&self, span_cols: &Mat, label: impl Into<String>) -> (Module, Mat) {
        let field = self.algebra.field();
        let basis = ColBasis::from_columns(span_cols);
        let k = basis.dim();
        let action = (0..self.algebra.dim())
            .map(|i| {
                Mat::from_fn(field, k, k, |r, c| {
                    let amb = basis.mat.column(c);
                    let img = self.apply_basis(i, &amb);
                    basis.coords_of(&img)[r].clone()
                })
            })
            .collect();
        (Module::dense(self.algebra.clone(), action, label), basis.mat)
    }

    /// Direct sum of two block modules.
    pub fn block_sum(&self, other: &Module, label: impl Into<String>) -> Module {
        match (&self.repr, &other.repr) {
            (ModRepr::Blocks { summands: a }, ModRepr::Blocks { summands: b }) => {
                let mut s = a.clone();
                s.extend_from_slice(b);
                Module::blocks(self.algebra.clone(), s, label)
            }
            _ => panic!("block_sum expects block modules"),
        }
    }

    pub fn digest(&self) -> String {
        let mut h = Hasher::new("module");
        h.str(self.algebra.digest());
        h.u64(self.dim as u64);
        match &self.repr {
            ModRepr::Dense { action } => {
                h.str("dense");
                for m in action {
                    h.mat(m);
                }
            }
            ModRepr::Blocks { summands } => {
                h.str("blocks");
                for &s in summands {
                    h.u64(s as u64);
                }
            }
        }
        h.finish()
    }
}

/// Basis of Hom_A(M, N) by solving the intertwining equations directly;
/// independent of any resolution, used as the Ext^0 oracle.
pub fn hom_basis(m: &Module, n: &Module) -> Vec<Mat> {
    let field = m.algebra().field();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Vec::new();
    }
    let vars = dm * dn; // F: dn x dm
    let na = m.algebra().dim();
    let mut sys = Mat::zeros(field, na * dm * dn, vars);
    for i in 0..na {
        let am = m.action_mat(i);
        let an = n.action_mat(i);
        // condition: F * am - an * F = 0
        for r in 0..dn {
            for c in 0..dm {
                let row = i * dm * dn + r * dm + c;
                // (F am)[r][c] = sum_k F[r][k] am[k][c]
                for k in 0..dm {
                    let coef = am.get(k, c);
                    if !coef.is_zero() {
                        let col = r * dm + k;
                        sys.set(row, col, sys.get(row, col).add(&coef));
                    }
                }
                // (an F)[r][c] = sum_k an[r][k] F[k][c]
                for k in 0..dn {
                    let coef = an.get(r, k);
                    if !coef.is_zero() {
                        let col = k * dm + c;
                        sys.set(row, col, sys.get(row, col).sub(&coef));
                    }
                }
            }
        }
    }
    let ker = sys.kernel_basis();
    (0..ker.cols())
        .map(|j| Mat::from_fn(field, dn, dm, |r, c| ker.get(r * dm + c, j)))
        .collect()
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

/// Catalog constructors for the built-in algebra families.
pub fn preset(name: &str, params: &[u64]) -> Result<Arc<Algebra>> {
    match name {
        "exterior" => {
            let [d, p] = params else {
                return Err(Error::invalid("exterior expects params d:char"));
            };
            exterior(*d as usize, *p)
        }
        "truncated_poly" => {
            if params.len() < 2 {
                return Err(Error::invalid(
                    "truncated_poly expects params e1:...:ek:char",
                ));
            }
            let (exps, p) = params.split_at(params.len() - 1);
            truncated_poly(&exps.iter().map(|&e| e as usize).collect::<Vec<_>>(), p[0], None)
        }
        "elem_abelian" | "elem_abelian_group" => {
            let [p, r] = params else {
                return Err(Error::invalid("elem_abelian expects params p:rank"));
            };
            elem_abelian(*p, *r as usize)
        }
        "nilpotent_loop" => match params {
            [n] => truncated_poly(&[*n as usize], 2, Some(format!("nilpotent_loop({n})"))),
            [n, p] => truncated_poly(&[*n as usize], *p, Some(format!("nilpotent_loop({n})"))),
            _ => Err(Error::invalid("nilpotent_loop expects params n or n:char")),
        },
        _ => Err(Error::invalid(format!("unknown preset {name:?}"))),
    }
}

/// Names and parameter syntax of the preset catalog.
pub fn preset_catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        ("exterior", "exterior:d:char — exterior algebra on d generators"),
        ("truncated_poly", "truncated_poly:e1:...:ek:char — k[x_1..x_k]/(x_i^{e_i})"),
        ("elem_abelian", "elem_abelian:p:rank — group algebra of (Z/p)^rank over F_p"),
        ("nilpotent_loop", "nilpotent_loop:n[:char] — k[x]/(x^n), default char 2"),
    ]
}

/// Exterior algebra on d generators. Basis: subsets of {1..d} ordered by
/// (size, lexicographic); products carry the usual shuffle sign.
pub fn exterior(d: usize, p: u64) -> Result<Arc<Algebra>> {
    if d == 0 {
        return Err(Error::invalid("exterior algebra needs d >= 1"));
    }
    if d > 16 {
        return Err(Error::cap("exterior degree capped at 16 (dim 2^d)"));
    }
    let field = Field::prime(p)?;
    let dim = 1usize << d;
    let mut masks: Vec<u32> = (0..dim as u32).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let index_of = {
        let mut map = vec![0usize; dim];
        for (i, &m) in masks.iter().enumerate() {
            map[m as usize] = i;
        }
        map
    };
    let label = |m: u32| -> String {
        if m == 0 {
            "1".to_string()
        } else {
            (0..d).filter(|i| m >> i & 1 == 1).map(|i| format!("x{}", i + 1)).collect::<Vec<_>>().join("")
        }
    };
    let labels: Vec<String> = masks.iter().map(|&m| label(m)).collect();
    let mut mult = vec![vec![vec![field.zero(); dim]; dim]; dim];
    for (i, &mi) in masks.iter().enumerate() {
        for (j, &mj) in masks.iter().enumerate() {
            if mi & mj != 0 {
                continue; // repeated generator squares to zero
            }
            // sign: (-1)^{#inversions between mi and mj}
            let mut inv = 0u32;
            for b in 0..d {
                if mj >> b & 1 == 1 {
                    inv += (mi >> (b + 1)).count_ones();
                }
            }
            let s = if inv % 2 == 0 { field.one() } else { field.one().neg() };
            mult[i][j][index_of[(mi | mj) as usize]] = s;
        }
    }
    let unit = unit_vec(field, dim, 0);
    let radical: Vec<Vec<Scalar>> = (1..dim).map(|i| unit_vec(field, dim, i)).collect();
    let flags = AlgebraFlags {
        self_injective: Some(true),
        noetherian_ext: NoethSource::PresetTheorem,
        noeth_note: Some("cohomology of an exterior algebra is finitely generated (Hopf algebra)".into()),
        radical_provenance: RadicalProvenance::Derived,
    };
    Ok(Arc::new(Algebra::new(
        field,
        labels,
        mult,
        unit,
        radical,
        vec![unit_vec(field, dim, 0)],
        flags,
        format!("exterior({d},{p})"),
        64,
    )?))
}

/// Truncated polynomial algebra k[x_1..x_c]/(x_i^{e_i}).
pub fn truncated_poly(exponents: &[usize], p: u64, name: Option<String>) -> Result<Arc<Algebra>> {
    if exponents.is_empty() || exponents.iter().any(|&e| e < 1) {
        return Err(Error::invalid("truncated_poly needs exponents >= 1"));
    }
    let field = Field::prime(p)?;
    let dim: usize = exponents.iter().product();
    if dim > 4096 {
        return Err(Error::cap("truncated_poly dimension capped at 4096"));
    }
    let c = exponents.len();
    // multi-indices in graded-lex order (total degree, then lex)
    let mut idxs: Vec<Vec<usize>> = Vec::with_capacity(dim);
    let mut cur = vec![0usize; c];
    loop {
        idxs.push(cur.clone());
        let mut k = c;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < exponents[k] {
                break;
            }
            cur[k] = 0;
            if k == 0 {
                k = usize::MAX;
                break;
            }
        }
        if k == usize::MAX {
            break;
        }
    }
    idxs.sort_by_key(|a| (a.iter().sum::<usize>(), a.clone()));
    let pos = |a: &[usize]| idxs.iter().position(|b| b == a).unwrap();
    let labels: Vec<String> = idxs
        .iter()
        .map(|a| {
            if a.iter().all(|&x| x == 0) {
                "1".to_string()
            } else {
                a.iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| if x == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, x) })
                    .collect::<Vec<_>>()
                    .join("")
            }
        })
        .collect();
    let mut mult = vec![vec![vec![field.zero(); dim]; dim]; dim];
    for (i, a) in idxs.iter().enumerate() {
        for (j, b) in idxs.iter().enumerate() {
            let sum: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if sum.iter().zip(exponents).all(|(s, e)| s < e) {
                mult[i][j][pos(&sum)] = field.one();
            }
        }
    }
    let unit = unit_vec(field, dim, 0);
    let radical: Vec<Vec<Scalar>> = (1..dim).map(|i| unit_vec(field, dim, i)).collect();
    let is_group_algebra = exponents.iter().all(|&e| e as u64 == p);
    let flags = AlgebraFlags {
        self_injective: Some(true),
        noetherian_ext: NoethSource::PresetTheorem,
        noeth_note: Some(if is_group_algebra {
            "group algebra of an elementary abelian p-group".into()
        } else {
            "artinian complete intersection; Ext is finitely generated over the polynomial ring of operators".into()
        }),
        radical_provenance: RadicalProvenance::Derived,
    };
    Ok(Arc::new(Algebra::new(
        field,
        labels,
        mult,
        unit,
        radical,
        vec![unit_vec(field, dim, 0)],
        flags,
        name.unwrap_or_else(|| {
            format!(
                "truncated_poly([{}],{p})",
                exponents.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
            )
        }),
        64,
    )?))
}

/// Group algebra of (Z/p)^rank over F_p, presented as k[x_i]/(x_i^p).
pub fn elem_abelian(p: u64, rank: usize) -> Result<Arc<Algebra>> {
    if rank == 0 {
        return Err(Error::invalid("elem_abelian needs rank >= 1"));
    }
    let a = truncated_poly(&vec![p as usize; rank], p, Some(format!("elem_abelian({p},{rank})")))?;
    Ok(a)
}

/// The simple top A/r as a module over A, with the quotient action.
pub fn simple_top(algebra: &Arc<Algebra>) -> Module {
    let reg = Module::regular(algebra.clone());
    // regular module coordinates differ from algebra coordinates only by
    // the block bases; for the full idempotent set the blocks partition A
    let (mut t, _) = reg.top();
    t.set_label("A/r");
    t
}

/// Enveloping algebra A (x) A^op together with A as a module over it.
pub fn enveloping(algebra: &Arc<Algebra>, dim_cap: usize) -> Result<(Arc<Algebra>, Module)> {
    let n = algebra.dim();
    let field = algebra.field();
    let edim = n * n;
    if edim > dim_cap {
        return Err(Error::cap(format!(
            "enveloping algebra dimension {edim} exceeds cap {dim_cap}"
        )));
    }
    let pair = |i: usize, ip: usize| i * n + ip;
    let labels: Vec<String> = (0..edim)
        .map(|k| format!("{}(x){}", algebra.labels()[k / n], algebra.labels()[k % n]))
        .collect();
    let mut mult = vec![vec![vec![field.zero(); edim]; edim]; edim];
    for i in 0..n {
        for ip in 0..n {
            for j in 0..n {
                for jp in 0..n {
                    // (b_i (x) b_ip^op)(b_j (x) b_jp^op) = b_i b_j (x) (b_jp b_ip)^op
                    let left = algebra.mult_basis(i, j);
                    let right = algebra.mult_basis(jp, ip);
                    let out = &mut mult[pair(i, ip)][pair(j, jp)];
                    for (k, ck) in left.iter().enumerate() {
                        if ck.is_zero() {
                            continue;
                        }
                        for (kp, ckp) in right.iter().enumerate() {
                            if !ckp.is_zero() {
                                let t = pair(k, kp);
                                out[t] = out[t].add(&ck.mul(ckp));
                            }
                        }
                    }
                }
            }
        }
    }
    // unit = 1 (x) 1
    let u = algebra.unit();
    let mut unit = vec![field.zero(); edim];
    for (i, a) in u.iter().enumerate() {
        for (j, b) in u.iter().enumerate() {
            let t = pair(i, j);
            unit[t] = unit[t].add(&a.mul(b));
        }
    }
    // radical = r (x) A + A (x) r (valid for split tops, which is all we build)
    let rad = algebra.radical_rows();
    let mut radical = Vec::new();
    for ri in 0..rad.rows() {
        let r = rad.row(ri);
        for j in 0..n {
            let mut v = vec![field.zero(); edim];
            for (i, c) in r.iter().enumerate() {
                v[pair(i, j)] = c.clone();
            }
            radical.push(v.clone());
            let mut w = vec![field.zero(); edim];
            for (i, c) in r.iter().enumerate() {
                w[pair(j, i)] = c.clone();
            }
            radical.push(w);
        }
    }
    // idempotents e_a (x) e_b
    let mut idems = Vec::new();
    for ea in algebra.idempotents() {
        for eb in algebra.idempotents() {
            let mut v = vec![field.zero(); edim];
            for (i, a) in ea.iter().enumerate() {
                for (j, b) in eb.iter().enumerate() {
                    let t = pair(i, j);
                    v[t] = v[t].add(&a.mul(b));
                }
            }
            idems.push(v);
        }
    }
    let flags = AlgebraFlags {
        self_injective: None,
        noetherian_ext: NoethSource::Unverified,
        noeth_note: None,
        radical_provenance: algebra.flags.radical_provenance,
    };
    let env = Arc::new(Algebra::new(
        field,
        labels,
        mult,
        unit,
        radical,
        idems,
        flags,
        format!("env({})", algebra.name()),
        24,
    )?);
    // A as a module over A^e: (b_i (x) b_j^op) . x = b_i x b_j
    let action: Vec<Mat> = (0..edim)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            let li = algebra.left_mult_of(&unit_vec(field, n, i));
            let rj = algebra.right_mult_of(&unit_vec(field, n, j));
            li.mul(&rj)
        })
        .collect();
    let m = Module::dense(env.clone(), action, format!("{} as bimodule", algebra.name()));
    Ok((env, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_loop_basic() {
        let a = preset("nilpotent_loop", &[2]).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.loewy_length().unwrap(), 2);
        assert!(a.is_local());
    }

    #[test]
    fn semisimple_loewy_one() {
        // k = k[x]/(x) is semisimple
        let a = preset("nilpotent_loop", &[1]).unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.is_semisimple());
        assert_eq!(a.loewy_length().unwrap(), 1);
    }

    #[test]
    fn exterior_dims_and_loewy() {
        let a = exterior(2, 2).unwrap();
        assert_eq!(a.dim(), 4);
        // r^2 = span{x1x2} != 0, r^3 = 0
        assert_eq!(a.loewy_length().unwrap(), 3);
        let b = exterior(3, 2).unwrap();
        assert_eq!(b.dim(), 8);
        assert_eq!(b.loewy_length().unwrap(), 4);
    }

    #[test]
    fn exterior_odd_char_signs() {
        // over F_3: x1 x2 = -x2 x1 and squares vanish
        let a = exterior(2, 3).unwrap();
        let f = a.field();
        let i1 = 1usize; // x1
        let i2 = 2usize; // x2
        let m12 = a.mult_basis(i1, i2);
        let m21 = a.mult_basis(i2, i1);
        let neg: Vec<Scalar> = m21.iter().map(|s| s.neg()).collect();
        assert_eq!(m12, neg);
        assert!(a.mult_basis(i1, i1).iter().all(|s| s.is_zero()));
        assert_eq!(f.characteristic(), 3);
    }

    #[test]
    fn elem_abelian_2_2() {
        let a = elem_abelian(2, 2).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.loewy_length().unwrap(), 3);
    }

    #[test]
    fn simple_top_local() {
        let a = preset("nilpotent_loop", &[2]).unwrap();
        let t = simple_top(&a);
        assert_eq!(t.dim(), 1);
        // x acts as zero on the top
        let x = t.action_mat(1);
        assert!(x.is_zero());
        t.validate().unwrap();
    }

    #[test]
    fn regular_module_valid() {
        let a = exterior(2, 2).unwrap();
        let m = Module::regular(a.clone());
        assert_eq!(m.dim(), 4);
        m.validate().unwrap();
    }

    #[test]
    fn enveloping_small() {
        let a = preset("nilpotent_loop", &[2]).unwrap();
        let (env, bimod) = enveloping(&a, 1024).unwrap();
        assert_eq!(env.dim(), 4);
        bimod.validate().unwrap();
        // action of 1(x)1 is the identity
        let u = env.unit().to_vec();
        let mut act = Mat::zeros(a.field(), 2, 2);
        for (i, c) in u.iter().enumerate() {
            if !c.is_zero() {
                act = act.add(&bimod.action_mat(i).scale(c));
            }
        }
        assert_eq!(act, Mat::identity(a.field(), 2));
    }

    #[test]
    fn enveloping_cap() {
        let a = exterior(3, 2).unwrap();
        assert!(matches!(enveloping(&a, 16), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn center_of_exterior2_char2() {
        // char 2 exterior on 2 generators is commutative: center = everything
        let a = exterior(2, 2).unwrap();
        assert_eq!(a.center_dim(), 4);
    }

    #[test]
    fn hom_oracle_regular_to_simple() {
        let a = preset("nilpotent_loop", &[2]).unwrap();
        let m = Module::regular(a.clone());
        let k = simple_top(&a);
        // Hom_A(A, k) = k
        assert_eq!(hom_basis(&m, &k).len(), 1);
        // Hom_A(k, A) = socle = span{x}: one map
        assert_eq!(hom_basis(&k, &m).len(), 1);
    }
}
