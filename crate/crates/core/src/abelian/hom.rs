use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use super::{cokernel, cokernel_from_diagonal, smith_normal_form, smith_normal_form_left};
use super::{AbelianGroup, IntegerMatrix};

/// A homomorphism between groups in canonical coordinates: column `j` holds
/// the target coordinates of the image of source generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    source: AbelianGroup,
    target: AbelianGroup,
    matrix: IntegerMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomError {
    #[error("matrix is {rows}x{cols} but the groups need {need_rows}x{need_cols}")]
    Shape { rows: usize, cols: usize, need_rows: usize, need_cols: usize },
    #[error("generator {0} of order {1} is not sent to an element of compatible order")]
    NotWellDefined(usize, BigUint),
}

/// Relation lattice of a group in canonical coordinates: one column per
/// torsion generator.
pub(crate) fn relation_matrix(g: &AbelianGroup) -> IntegerMatrix {
    let n = g.num_generators();
    let t = g.invariant_factors().len();
    let mut m = IntegerMatrix::zeros(n, t);
    for (i, d) in g.invariant_factors().iter().enumerate() {
        m[(i, i)] = BigInt::from(d.clone());
    }
    m
}

/// Reduces a coordinate vector modulo the torsion orders of `g`.
pub fn reduce_coordinates(g: &AbelianGroup, v: &mut [BigInt]) {
    for (i, d) in g.invariant_factors().iter().enumerate() {
        v[i] = v[i].mod_floor(&BigInt::from(d.clone()));
    }
}

/// Basis of the integer kernel `{x : m x = 0}` as columns.
pub fn integer_kernel(m: &IntegerMatrix) -> IntegerMatrix {
    let snf = smith_normal_form(m);
    let right = snf.right.expect("right transform requested");
    let cols: Vec<Vec<BigInt>> = (snf.rank..m.cols()).map(|j| right.column(j)).collect();
    IntegerMatrix::from_columns(m.cols(), &cols)
}

/// `L / N` for lattices in `Z^n` given by generator columns, assuming
/// `N ⊆ L`.
pub fn subquotient(l_gens: &IntegerMatrix, n_gens: &IntegerMatrix) -> AbelianGroup {
    assert_eq!(l_gens.rows(), n_gens.rows(), "lattices live in different ambient spaces");
    let snf = smith_normal_form_left(l_gens);
    let r = snf.rank;
    // Coordinates of each N generator in the basis (U^{-1} e_i) d_i of L.
    let mut coords = IntegerMatrix::zeros(r, n_gens.cols());
    for j in 0..n_gens.cols() {
        let y = snf.left.mul_vec(&n_gens.column(j));
        for i in 0..r {
            let (q, rem) = y[i].div_rem(&snf.diagonal[i]);
            assert!(rem.is_zero(), "sublattice is not contained in the lattice");
            coords[(i, j)] = q;
        }
        debug_assert!(y[r..].iter().all(Zero::is_zero), "sublattice is not contained in the lattice");
    }
    cokernel(&coords)
}

impl Hom {
    pub fn new(source: AbelianGroup, target: AbelianGroup, matrix: IntegerMatrix) -> Result<Self, HomError> {
        let (need_rows, need_cols) = (target.num_generators(), source.num_generators());
        if matrix.rows() != need_rows || matrix.cols() != need_cols {
            return Err(HomError::Shape { rows: matrix.rows(), cols: matrix.cols(), need_rows, need_cols });
        }
        let target_relations = relation_matrix(&target);
        for (j, d) in source.invariant_factors().iter().enumerate() {
            // d * f(e_j) must vanish in the target.
            let scaled: Vec<BigInt> =
                matrix.column(j).iter().map(|v| v * BigInt::from(d.clone())).collect();
            if !in_lattice(&target_relations, &scaled) {
                return Err(HomError::NotWellDefined(j, d.clone()));
            }
        }
        Ok(Hom { source, target, matrix })
    }

    pub fn zero(source: AbelianGroup, target: AbelianGroup) -> Self {
        let matrix = IntegerMatrix::zeros(target.num_generators(), source.num_generators());
        Hom { source, target, matrix }
    }

    pub fn source(&self) -> &AbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.matrix.mul_vec(x);
        reduce_coordinates(&self.target, &mut y);
        y
    }

    /// Generators (columns) of the lattice of source lifts mapping into the
    /// target relations.
    fn kernel_lift(&self) -> IntegerMatrix {
        let ns = self.source.num_generators();
        let joint = self.matrix.hcat(&relation_matrix(&self.target));
        let k = integer_kernel(&joint);
        let cols: Vec<Vec<BigInt>> = (0..k.cols()).map(|j| k.column(j)[..ns].to_vec()).collect();
        IntegerMatrix::from_columns(ns, &cols)
    }

    pub fn kernel(&self) -> AbelianGroup {
        let lift = self.kernel_lift().hcat(&relation_matrix(&self.source));
        subquotient(&lift, &relation_matrix(&self.source))
    }

    pub fn cokernel(&self) -> AbelianGroup {
        cokernel(&self.matrix.hcat(&relation_matrix(&self.target)))
    }

    pub fn image(&self) -> AbelianGroup {
        let rel = relation_matrix(&self.target);
        subquotient(&self.matrix.hcat(&rel), &rel)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    pub fn is_zero(&self) -> bool {
        self.image().is_trivial()
    }
}

/// Whether `v` lies in the column span of `m`.
pub(crate) fn in_lattice(m: &IntegerMatrix, v: &[BigInt]) -> bool {
    let snf = smith_normal_form_left(m);
    let y = snf.left.mul_vec(v);
    y.iter().enumerate().all(|(i, yi)| {
        if i < snf.rank {
            yi.is_multiple_of(&snf.diagonal[i])
        } else {
            yi.is_zero()
        }
    })
}

/// Cokernel of a relation matrix together with the coordinate change it
/// induces: `reduce` maps ambient coordinates to canonical group coordinates
/// and `section` lifts canonical generators back to ambient vectors.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: AbelianGroup,
    pub reduce: IntegerMatrix,
    pub section: IntegerMatrix,
}

impl Quotient {
    pub fn of(relations: &IntegerMatrix) -> Quotient {
        let n = relations.rows();
        let snf = smith_normal_form_left(relations);
        let nonzero = &snf.diagonal[..snf.rank];
        let group = cokernel_from_diagonal(n, nonzero);
        let first_nonunit = nonzero.iter().take_while(|d| **d == BigInt::from(1)).count();
        let kept: Vec<usize> = (first_nonunit..n).collect();
        let mut reduce = IntegerMatrix::zeros(kept.len(), n);
        let mut section = IntegerMatrix::zeros(n, kept.len());
        for (c, &i) in kept.iter().enumerate() {
            for j in 0..n {
                reduce[(c, j)] = snf.left[(i, j)].clone();
                section[(j, c)] = snf.left_inverse[(j, i)].clone();
            }
        }
        Quotient { group, reduce, section }
    }

    /// Canonical coordinates of an ambient vector.
    pub fn coordinates(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.reduce.mul_vec(v);
        reduce_coordinates(&self.group, &mut y);
        y
    }
}
