#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use tensor_index_core::group::{GroupElement, GroupKind};
use tensor_index_core::linalg::{CMatrix, Complex64};
use tensor_index_core::rewrite::Rule;
use tensor_index_core::species::{Color, SpeciesDef, SpeciesRef, TensorSpecies};
use tensor_index_core::tensor::{succ_above_inv, DenseTensor, Permutation, Signature};
use tensor_index_core::tree::{Action, Scalar, TensorTree};

pub const MAX_RANK: usize = 4;

/// Four colors of dimensions 1, 2, 2, 4. `b` and `b'` are dual to each
/// other; `a` and `c` are self-dual. The contraction forms are not the
/// identity, so any orientation mistake shows up numerically.
pub fn mixed_species() -> SpeciesRef {
    fn rep(c: Color, g: &GroupElement) -> CMatrix {
        let z = g.matrix().get(0, 0);
        match c.index() {
            1 => CMatrix::identity(2).scale(z),
            2 => CMatrix::identity(2).scale(z.inv()),
            3 => CMatrix::identity(4),
            _ => CMatrix::identity(1),
        }
    }
    let kb = CMatrix::from_real(2, 2, &[1.0, 2.0, 0.0, 1.0]);
    let kc = CMatrix::from_real(
        4,
        4,
        &[2.0, 1.0, 0.0, 0.0, 1.0, -1.0, 0.5, 0.0, 0.0, 0.5, 3.0, 0.0, 0.0, 0.0, 0.0, 1.0],
    );
    let ka = CMatrix::from_real(1, 1, &[3.0]);
    let colors = vec![
        ("a".to_string(), 0, 1),
        ("b".to_string(), 2, 2),
        ("b'".to_string(), 1, 2),
        ("c".to_string(), 3, 4),
    ];
    let dims = [1, 2, 2, 4];
    Arc::new(
        TensorSpecies::new(SpeciesDef {
            name: "mixed".to_string(),
            group: GroupKind::Phase,
            colors,
            rep,
            contr: vec![ka, kb.clone(), kb.transpose(), kc],
            unit: dims.iter().map(|&d| CMatrix::identity(d)).collect(),
            metric: dims.iter().map(|&d| CMatrix::identity(d)).collect(),
        })
        .unwrap(),
    )
}

pub fn all_signatures(sp: &SpeciesRef, rank: usize) -> Vec<Signature> {
    let colors: Vec<Color> = sp.colors().collect();
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|s: Vec<Color>| {
                colors.iter().map(move |&c| {
                    let mut t = s.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out.into_iter().map(Signature::new).collect()
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn random_signature<R: Rng>(sp: &SpeciesRef, rank: usize, rng: &mut R) -> Signature {
    let n = sp.color_count();
    Signature::new((0..rank).map(|_| Color::new(rng.gen_range(0..n) as u8)).collect())
}

pub fn dual(sp: &SpeciesRef, c: Color) -> Color {
    sp.dual_color(c).unwrap()
}

/// A random signature of the given rank with `sig[k] = τ sig[i]` for the
/// returned distinct `(i, k)`.
pub fn signature_with_pair<R: Rng>(sp: &SpeciesRef, rank: usize, rng: &mut R) -> (Signature, usize, usize) {
    let mut cs = random_signature(sp, rank, rng).colors().to_vec();
    let i = rng.gen_range(0..rank);
    let mut k = rng.gen_range(0..rank - 1);
    if k >= i {
        k += 1;
    }
    cs[k] = dual(sp, cs[i]);
    (Signature::new(cs), i, k)
}

pub fn random_tensor<R: Rng>(sp: &SpeciesRef, sig: &Signature, rng: &mut R) -> DenseTensor {
    DenseTensor::random(sp.clone(), sig.clone(), rng).unwrap()
}

pub fn random_leaf<R: Rng>(sp: &SpeciesRef, sig: &Signature, rng: &mut R) -> TensorTree {
    const NAMES: [&str; 5] = ["A", "B", "C", "D", "E"];
    let name = NAMES[rng.gen_range(0..NAMES.len())];
    TensorTree::tensor(name, random_tensor(sp, sig, rng))
}

pub fn random_perm<R: Rng>(source: &Signature, rng: &mut R) -> Permutation {
    let mut map: Vec<usize> = (0..source.len()).collect();
    map.shuffle(rng);
    Permutation::from_map(source.clone(), map).unwrap()
}

pub fn random_scalar<R: Rng>(rng: &mut R) -> Scalar {
    Scalar {
        value: Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
        name: None,
    }
}

pub fn random_action<R: Rng>(sp: &SpeciesRef, rng: &mut R) -> Action {
    Action {
        element: GroupElement::sample(sp.group_kind(), rng),
        name: Some("g".to_string()),
    }
}

/// Positions `(i, j)` for a `contr` node contracting positions `i` and `k`.
pub fn contr_args(i: usize, k: usize) -> (usize, usize) {
    (i, succ_above_inv(i, k))
}

fn dual_pairs(sp: &SpeciesRef, sig: &Signature) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..sig.len() {
        for k in 0..sig.len() {
            if i != k && sig[k] == dual(sp, sig[i]) {
                out.push((i, k));
            }
        }
    }
    out
}

/// A random well-typed tree of rank at most [`MAX_RANK`] using every
/// constructor.
pub fn random_tree<R: Rng>(sp: &SpeciesRef, depth: usize, rng: &mut R) -> TensorTree {
    if depth == 0 {
        let rank = rng.gen_range(0..=3);
        let sig = random_signature(sp, rank, rng);
        return random_leaf(sp, &sig, rng);
    }
    let child = random_tree(sp, depth - 1, rng);
    match rng.gen_range(0..9) {
        0 => child,
        1 => TensorTree::neg(child),
        2 => TensorTree::smul(random_scalar(rng), child),
        3 => TensorTree::action(random_action(sp, rng), child).unwrap(),
        4 => {
            let sigma = random_perm(child.signature(), rng);
            TensorTree::perm(sigma, child).unwrap()
        }
        5 => {
            let other = random_tree(sp, depth - 1, rng);
            if child.rank() + other.rank() <= MAX_RANK {
                TensorTree::prod(child, other).unwrap()
            } else {
                child
            }
        }
        6 => {
            let pairs = dual_pairs(sp, child.signature());
            match pairs.choose(rng) {
                Some(&(i, k)) => {
                    let (i, j) = contr_args(i, k);
                    TensorTree::contr(i, j, child).unwrap()
                }
                None => child,
            }
        }
        7 => {
            if child.rank() == 0 {
                return child;
            }
            let i = rng.gen_range(0..child.rank());
            let x = rng.gen_range(0..sp.rep_dim(child.signature()[i]).unwrap());
            TensorTree::eval(i, x, child).unwrap()
        }
        _ => {
            // Same signature on the right, reached through a permutation.
            let sigma = random_perm(child.signature(), rng);
            let inv = sigma.inverse();
            let mut other = random_leaf(sp, sigma.target(), rng);
            if rng.gen_bool(0.5) {
                other = TensorTree::neg(other);
            }
            let right = TensorTree::perm(inv, other).unwrap();
            TensorTree::add(child, right).unwrap()
        }
    }
}

/// A random tree whose root matches `rule`.
pub fn matching_tree<R: Rng>(sp: &SpeciesRef, rule: Rule, rng: &mut R) -> TensorTree {
    let leaf = |rank: usize, rng: &mut R| {
        let sig = random_signature(sp, rank, rng);
        random_leaf(sp, &sig, rng)
    };
    let small = |rng: &mut R| rng.gen_range(0..=2);
    let permuted = |rank: usize, rng: &mut R| {
        let a = leaf(rank, rng);
        let sigma = random_perm(a.signature(), rng);
        TensorTree::perm(sigma, a).unwrap()
    };
    let evaluable = |t: TensorTree, rng: &mut R| {
        let i = rng.gen_range(0..t.rank());
        let x = rng.gen_range(0..sp.rep_dim(t.signature()[i]).unwrap());
        TensorTree::eval(i, x, t).unwrap()
    };
    match rule {
        Rule::ProdPermLeft => {
            let (r1, r2) = (small(rng), small(rng));
            TensorTree::prod(permuted(r1, rng), leaf(r2, rng)).unwrap()
        }
        Rule::ProdPermRight => {
            let (r1, r2) = (small(rng), small(rng));
            TensorTree::prod(leaf(r1, rng), permuted(r2, rng)).unwrap()
        }
        Rule::PermPerm => {
            let rank = rng.gen_range(0..=MAX_RANK);
            let inner = permuted(rank, rng);
            let sigma = random_perm(inner.signature(), rng);
            TensorTree::perm(sigma, inner).unwrap()
        }
        Rule::PermContrCongr => {
            let rank = rng.gen_range(2..=MAX_RANK);
            let (sig, p, q) = signature_with_pair(sp, rank, rng);
            let sigma = random_perm(&sig, rng);
            let (i, j) = contr_args(sigma.apply(p), sigma.apply(q));
            let inner = TensorTree::perm(sigma, random_leaf(sp, &sig, rng)).unwrap();
            TensorTree::contr(i, j, inner).unwrap()
        }
        Rule::ContrContr => {
            // Two disjoint dual pairs spread over a rank-4 leaf.
            let mut cs = random_signature(sp, 4, rng).colors().to_vec();
            let mut pos: Vec<usize> = (0..4).collect();
            pos.shuffle(rng);
            cs[pos[1]] = dual(sp, cs[pos[0]]);
            cs[pos[3]] = dual(sp, cs[pos[2]]);
            let sig = Signature::new(cs);
            let (k, l) = contr_args(pos[2], pos[3]);
            let inner = TensorTree::contr(k, l, random_leaf(sp, &sig, rng)).unwrap();
            let survivors: Vec<usize> = (0..4).filter(|&x| x != pos[2] && x != pos[3]).collect();
            let a = survivors.iter().position(|&x| x == pos[0]).unwrap();
            let b = survivors.iter().position(|&x| x == pos[1]).unwrap();
            let (i, j) = contr_args(a, b);
            TensorTree::contr(i, j, inner).unwrap()
        }
        Rule::NegFstProd => {
            let (r1, r2) = (small(rng), small(rng));
            TensorTree::prod(TensorTree::neg(leaf(r1, rng)), leaf(r2, rng)).unwrap()
        }
        Rule::NegSndProd => {
            let (r1, r2) = (small(rng), small(rng));
            TensorTree::prod(leaf(r1, rng), TensorTree::neg(leaf(r2, rng))).unwrap()
        }
        Rule::SmulFstProd => {
            let (r1, r2) = (small(rng), small(rng));
            TensorTree::prod(TensorTree::smul(random_scalar(rng), leaf(r1, rng)), leaf(r2, rng)).unwrap()
        }
        Rule::SmulSndProd => {
            let (r1, r2) = (small(rng), small(rng));
            TensorTree::prod(leaf(r1, rng), TensorTree::smul(random_scalar(rng), leaf(r2, rng))).unwrap()
        }
        Rule::NegContr | Rule::SmulContr | Rule::ContrSymm => {
            let rank = rng.gen_range(2..=MAX_RANK);
            let (sig, p, q) = signature_with_pair(sp, rank, rng);
            let (p, q) = if rule == Rule::ContrSymm { (p.max(q), p.min(q)) } else { (p, q) };
            let base = random_leaf(sp, &sig, rng);
            let child = match rule {
                Rule::NegContr => TensorTree::neg(base),
                Rule::SmulContr => TensorTree::smul(random_scalar(rng), base),
                _ => base,
            };
            let (i, j) = contr_args(p, q);
            TensorTree::contr(i, j, child).unwrap()
        }
        Rule::NegPerm => TensorTree::neg(permuted(rng.gen_range(0..=MAX_RANK), rng)),
        Rule::SmulPerm => TensorTree::smul(random_scalar(rng), permuted(rng.gen_range(0..=MAX_RANK), rng)),
        Rule::SmulNeg => TensorTree::smul(random_scalar(rng), TensorTree::neg(leaf(small(rng), rng))),
        Rule::NegNeg => TensorTree::neg(TensorTree::neg(leaf(small(rng), rng))),
        Rule::SmulSmul => TensorTree::smul(
            random_scalar(rng),
            TensorTree::smul(random_scalar(rng), leaf(small(rng), rng)),
        ),
        Rule::PermEval => {
            let t = permuted(rng.gen_range(1..=MAX_RANK), rng);
            evaluable(t, rng)
        }
        Rule::NegEval => {
            let t = TensorTree::neg(leaf(rng.gen_range(1..=3), rng));
            evaluable(t, rng)
        }
        Rule::SmulEval => {
            let t = TensorTree::smul(random_scalar(rng), leaf(rng.gen_range(1..=3), rng));
            evaluable(t, rng)
        }
        Rule::PermAction => {
            let t = permuted(rng.gen_range(0..=3), rng);
            TensorTree::action(random_action(sp, rng), t).unwrap()
        }
        Rule::NegAction => {
            let t = TensorTree::neg(leaf(small(rng), rng));
            TensorTree::action(random_action(sp, rng), t).unwrap()
        }
        Rule::SmulAction => {
            let t = TensorTree::smul(random_scalar(rng), leaf(small(rng), rng));
            TensorTree::action(random_action(sp, rng), t).unwrap()
        }
        Rule::AddPerm => {
            let left = permuted(rng.gen_range(0..=3), rng);
            let sig = left.signature().clone();
            let right = if rng.gen_bool(0.5) {
                random_leaf(sp, &sig, rng)
            } else {
                let rho = random_perm(&sig, rng).inverse();
                let b = random_leaf(sp, rho.source(), rng);
                TensorTree::perm(rho, b).unwrap()
            };
            TensorTree::add(left, right).unwrap()
        }
        Rule::PermAdd => {
            let a = leaf(rng.gen_range(0..=3), rng);
            let b = random_leaf(sp, a.signature(), rng);
            let sum = TensorTree::add(a, b).unwrap();
            let sigma = random_perm(sum.signature(), rng);
            TensorTree::perm(sigma, sum).unwrap()
        }
        Rule::PermId => {
            let a = leaf(rng.gen_range(0..=MAX_RANK), rng);
            TensorTree::perm(Permutation::identity(a.signature().clone()), a).unwrap()
        }
    }
}

/// Row-major strides for `shape`, computed independently of the library.
pub fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * shape[k + 1];
    }
    s
}

pub fn offset(ix: &[usize], strides: &[usize]) -> usize {
    ix.iter().zip(strides).map(|(a, b)| a * b).sum()
}

/// Every multi-index of `shape` in row-major order, via an odometer.
pub fn indices(shape: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = shape.iter().product();
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![0; shape.len()];
    for _ in 0..total {
        out.push(cur.clone());
        for k in (0..shape.len()).rev() {
            cur[k] += 1;
            if cur[k] < shape[k] {
                break;
            }
            cur[k] = 0;
        }
    }
    out
}

pub fn shape_of(sp: &SpeciesRef, sig: &Signature) -> Vec<usize> {
    sig.colors().iter().map(|&c| sp.rep_dim(c).unwrap()).collect()
}

/// Naive kernels on flat row-major data.
pub mod naive {
    use super::*;

    pub fn product(a: &DenseTensor, b: &DenseTensor) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a.data() {
            for y in b.data() {
                out.push(x * y);
            }
        }
        out
    }

    /// Contracts positions `i` and `k` with the form of `sig[i]`.
    pub fn contract(t: &DenseTensor, i: usize, k: usize) -> Vec<Complex64> {
        let sp = t.species();
        let shape = shape_of(sp, t.signature());
        let st = strides(&shape);
        let form = sp.contraction_form(t.signature()[i]).unwrap();
        let rest: Vec<usize> = (0..shape.len()).filter(|&p| p != i && p != k).collect();
        let rest_shape: Vec<usize> = rest.iter().map(|&p| shape[p]).collect();
        let mut out = Vec::new();
        for r in indices(&rest_shape) {
            let mut acc = Complex64::new(0.0, 0.0);
            for x in 0..shape[i] {
                for y in 0..shape[k] {
                    let mut full = vec![0; shape.len()];
                    for (slot, &p) in rest.iter().enumerate() {
                        full[p] = r[slot];
                    }
                    full[i] = x;
                    full[k] = y;
                    acc += form.get(x, y) * t.data()[offset(&full, &st)];
                }
            }
            out.push(acc);
        }
        out
    }

    /// `out[b] = t[a]` with `b[σ(i)] = a[i]`.
    pub fn permute(t: &DenseTensor, map: &[usize]) -> Vec<Complex64> {
        let shape = shape_of(t.species(), t.signature());
        let mut out_shape = vec![0; shape.len()];
        for (i, &m) in map.iter().enumerate() {
            out_shape[m] = shape[i];
        }
        let so = strides(&out_shape);
        let mut out = vec![Complex64::new(0.0, 0.0); t.len()];
        for (n, a) in indices(&shape).into_iter().enumerate() {
            let mut b = vec![0; a.len()];
            for (i, &m) in map.iter().enumerate() {
                b[m] = a[i];
            }
            out[offset(&b, &so)] = t.data()[n];
        }
        out
    }

    pub fn eval_index(t: &DenseTensor, i: usize, x: usize) -> Vec<Complex64> {
        let shape = shape_of(t.species(), t.signature());
        indices(&shape)
            .into_iter()
            .zip(t.data())
            .filter(|(ix, _)| ix[i] == x)
            .map(|(_, v)| *v)
            .collect()
    }
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
