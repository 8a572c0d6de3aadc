//! Dense multilinear maps `V₁ × … × V_k → W` stored by structure constants.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Matrix, Vector};

/// Coefficients `t[i₁]…[i_k][l]` of a multilinear map on basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multilinear {
    field: FieldSpec,
    dims: Vec<usize>,
    out: usize,
    data: Vec<Scalar>,
}

/// An argument to [`Multilinear::eval_mixed`]: a basis index or a full vector.
#[derive(Clone, Copy, Debug)]
pub enum Arg<'a> {
    Basis(usize),
    Vector(&'a Vector),
}

impl Multilinear {
    pub fn zeros(field: FieldSpec, dims: Vec<usize>, out: usize) -> Self {
        let len = dims.iter().product::<usize>() * out;
        Multilinear { field, dims, out, data: vec![field.zero(); len] }
    }

    /// Builds the map from its values on basis tuples.
    pub fn from_fn(field: FieldSpec, dims: Vec<usize>, out: usize, mut f: impl FnMut(&[usize]) -> Vector) -> Self {
        let mut t = Self::zeros(field, dims, out);
        for idx in indices(&t.dims) {
            let v = f(&idx);
            assert_eq!(v.len(), out, "value of the wrong length");
            let o = t.offset(&idx);
            t.data[o..o + out].clone_from_slice(&v.0);
        }
        t
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    pub fn out_dim(&self) -> usize {
        self.out
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        let mut o = 0;
        for (i, d) in idx.iter().zip(&self.dims) {
            debug_assert!(i < d);
            o = o * d + i;
        }
        o * self.out
    }

    /// Value on a basis tuple, as a coordinate slice.
    pub fn value(&self, idx: &[usize]) -> &[Scalar] {
        let o = self.offset(idx);
        &self.data[o..o + self.out]
    }

    pub fn value_vec(&self, idx: &[usize]) -> Vector {
        Vector(self.value(idx).to_vec())
    }

    pub fn set(&mut self, idx: &[usize], l: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "field mismatch");
        let o = self.offset(idx);
        self.data[o + l] = v;
    }

    pub fn set_value(&mut self, idx: &[usize], v: &Vector) {
        assert_eq!(v.len(), self.out, "value of the wrong length");
        let o = self.offset(idx);
        self.data[o..o + self.out].clone_from_slice(&v.0);
    }

    pub fn add_to(&mut self, idx: &[usize], v: &Vector) {
        let o = self.offset(idx);
        for (a, b) in self.data[o..o + self.out].iter_mut().zip(&v.0) {
            *a += b;
        }
    }

    /// Evaluates on arbitrary vectors.
    pub fn eval(&self, args: &[&Vector]) -> Vector {
        let mixed: Vec<Arg> = args.iter().map(|v| Arg::Vector(v)).collect();
        self.eval_mixed(&mixed)
    }

    /// Evaluates on a mixture of basis indices and vectors.
    pub fn eval_mixed(&self, args: &[Arg]) -> Vector {
        assert_eq!(args.len(), self.dims.len(), "wrong number of arguments");
        for (a, d) in args.iter().zip(&self.dims) {
            match a {
                Arg::Basis(i) => assert!(i < d, "basis index out of range"),
                Arg::Vector(v) => assert_eq!(v.len(), *d, "argument of the wrong length"),
            }
        }
        let mut out = Vector::zeros(self.field, self.out);
        self.accumulate(args, 0, 0, None, &mut out);
        out
    }

    fn accumulate(&self, args: &[Arg], depth: usize, offset: usize, coef: Option<Scalar>, out: &mut Vector) {
        if depth == args.len() {
            let o = offset * self.out;
            let slice = &self.data[o..o + self.out];
            match coef {
                None => {
                    for (a, b) in out.0.iter_mut().zip(slice) {
                        *a += b;
                    }
                }
                Some(c) => {
                    for (a, b) in out.0.iter_mut().zip(slice) {
                        if !b.is_zero() {
                            a.add_product(&c, b);
                        }
                    }
                }
            }
            return;
        }
        let d = self.dims[depth];
        match args[depth] {
            Arg::Basis(i) => self.accumulate(args, depth + 1, offset * d + i, coef, out),
            Arg::Vector(v) => {
                for (i, x) in v.support() {
                    let c = match &coef {
                        None => x.clone(),
                        Some(c) => c * x,
                    };
                    self.accumulate(args, depth + 1, offset * d + i, Some(c), out);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Multilinear) -> Multilinear {
        self.assert_same_shape(other);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Multilinear { data, ..self.clone() }
    }

    pub fn sub(&self, other: &Multilinear) -> Multilinear {
        self.assert_same_shape(other);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Multilinear { data, ..self.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> Multilinear {
        let data = self.data.iter().map(|a| a * c).collect();
        Multilinear { data, ..self.clone() }
    }

    pub fn neg(&self) -> Multilinear {
        let data = self.data.iter().map(|a| -a).collect();
        Multilinear { data, ..self.clone() }
    }

    fn assert_same_shape(&self, other: &Multilinear) {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.dims, other.dims, "shape mismatch");
        assert_eq!(self.out, other.out, "shape mismatch");
    }

    pub fn same_shape(&self, other: &Multilinear) -> bool {
        self.field == other.field && self.dims == other.dims && self.out == other.out
    }

    /// Flattened coefficients in storage order.
    pub fn coefficients(&self) -> &[Scalar] {
        &self.data
    }

    pub fn from_coefficients(field: FieldSpec, dims: Vec<usize>, out: usize, data: Vec<Scalar>) -> Result<Self> {
        let len = dims.iter().product::<usize>() * out;
        if data.len() != len {
            return Err(Error::Shape(format!("{} coefficients, expected {len}", data.len())));
        }
        if let Some(bad) = data.iter().find(|x| x.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(Multilinear { field, dims, out, data })
    }

    pub fn as_vector(&self) -> Vector {
        Vector(self.data.clone())
    }

    /// Nonzero coefficients as `(indices, output, value)`, in storage order.
    pub fn nonzero_entries(&self) -> Vec<(Vec<usize>, usize, Scalar)> {
        let mut res = Vec::new();
        for idx in indices(&self.dims) {
            for (l, v) in self.value(&idx).iter().enumerate() {
                if !v.is_zero() {
                    res.push((idx.clone(), l, v.clone()));
                }
            }
        }
        res
    }

    /// First basis tuple (lexicographic) where the two maps differ.
    pub fn first_difference(&self, other: &Multilinear) -> Option<Vec<usize>> {
        self.assert_same_shape(other);
        indices(&self.dims).find(|idx| self.value(idx) != other.value(idx))
    }

    /// Precomposes slot `k` with a linear map: `t'(…, x_k, …) = t(…, m·x_k, …)`.
    pub fn compose_slot(&self, k: usize, m: &Matrix) -> Multilinear {
        assert_eq!(m.rows(), self.dims[k], "slot map has the wrong target");
        let mut dims = self.dims.clone();
        dims[k] = m.cols();
        let cols: Vec<Vector> = (0..m.cols()).map(|c| m.column(c)).collect();
        Multilinear::from_fn(self.field, dims, self.out, |idx| {
            let args: Vec<Arg> = idx
                .iter()
                .enumerate()
                .map(|(s, &i)| if s == k { Arg::Vector(&cols[i]) } else { Arg::Basis(i) })
                .collect();
            self.eval_mixed(&args)
        })
    }

    /// Postcomposes the output with a linear map.
    pub fn compose_output(&self, m: &Matrix) -> Multilinear {
        assert_eq!(m.cols(), self.out, "output map has the wrong source");
        Multilinear::from_fn(self.field, self.dims.clone(), m.rows(), |idx| m.apply(&self.value_vec(idx)))
    }
}

/// Lexicographic iterator over index tuples `0 ≤ i_k < dims[k]`.
#[derive(Clone, Debug)]
pub struct Indices {
    dims: Vec<usize>,
    cur: Option<Vec<usize>>,
}

impl Iterator for Indices {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.cur.take()?;
        let mut nxt = cur.clone();
        let mut advanced = false;
        for k in (0..nxt.len()).rev() {
            nxt[k] += 1;
            if nxt[k] < self.dims[k] {
                advanced = true;
                break;
            }
            nxt[k] = 0;
        }
        if advanced {
            self.cur = Some(nxt);
        }
        Some(cur)
    }
}

pub fn indices(dims: &[usize]) -> Indices {
    let cur = if dims.contains(&0) { None } else { Some(vec![0; dims.len()]) };
    Indices { dims: dims.to_vec(), cur }
}

/// First violation of the cochain constraints on the final three arguments:
/// alternation in the first two of them (`f(…,x,x,z) = 0` and
/// `f(…,x,y,z) + f(…,y,x,z) = 0`) and the vanishing cyclic sum over `(x, y, z)`.
/// Returns the constraint name and the lexicographically first failing tuple.
pub fn cochain_constraint_violation(t: &Multilinear) -> Option<(&'static str, Vec<usize>)> {
    let k = t.arity();
    if k < 3 {
        return None;
    }
    let d = t.dims()[k - 1];
    let prefix_dims = &t.dims()[..k - 3];
    let at = |pre: &[usize], a: usize, b: usize, c: usize| {
        let mut idx = pre.to_vec();
        idx.extend([a, b, c]);
        idx
    };
    for pre in indices(prefix_dims) {
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let i1 = at(&pre, x, y, z);
                    let ok = if x == y {
                        t.value(&i1).iter().all(Scalar::is_zero)
                    } else {
                        let i2 = at(&pre, y, x, z);
                        t.value(&i1).iter().zip(t.value(&i2)).all(|(a, b)| (a + b).is_zero())
                    };
                    if !ok {
                        return Some(("alternating", i1));
                    }
                }
            }
        }
    }
    for pre in indices(prefix_dims) {
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let (i1, i2, i3) = (at(&pre, x, y, z), at(&pre, y, z, x), at(&pre, z, x, y));
                    let sum_zero =
                        (0..t.out_dim()).all(|l| (&(&t.value(&i1)[l] + &t.value(&i2)[l]) + &t.value(&i3)[l]).is_zero());
                    if !sum_zero {
                        return Some(("cyclic", i1));
                    }
                }
            }
        }
    }
    None
}
