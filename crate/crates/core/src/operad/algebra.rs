//! Finite-dimensional algebras over `Q`: involutive Frobenius axioms and the
//! sign law for involutive `A∞` structures.
//!
//! Tables are JSON objects
//! `{"dim", "labels"?, "mult", "form", "inv", "grading"?, "higher"?}` with
//! rationals written as integers or `"p/q"` strings:
//! `mult[i][j]` is the coordinate vector of `e_i e_j`, `form[i][j] = ⟨e_i, e_j⟩`,
//! `inv[i]` is `e_i*`, and `higher["k"][i_1]..[i_k]` is `m_k(e_{i_1}, .., e_{i_k})`.
//! `mult` is `m_2`; `higher` may also carry `"1"` for a differential.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::OperadError;

/// A rational that reads and writes as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q(pub BigRational);

impl Q {
    pub fn zero() -> Self {
        Q(BigRational::zero())
    }

    pub fn int(n: i64) -> Self {
        Q(BigRational::from_integer(n.into()))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Q {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let bad = || format!("not a rational: {s:?}");
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Q(BigRational::new(p, q)))
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) => s.parse().map_err(de::Error::custom),
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => {
                n.to_string().parse().map_err(de::Error::custom)
            }
            other => Err(de::Error::custom(format!("expected an integer or \"p/q\" string, got {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraTable {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    pub mult: Vec<Vec<Vec<Q>>>,
    pub form: Vec<Vec<Q>>,
    pub inv: Vec<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub higher: BTreeMap<String, serde_json::Value>,
}

type Vector = Vec<BigRational>;

/// `m_k` as a dense table indexed by the mixed-radix code of the inputs.
#[derive(Clone, Debug)]
struct Operation {
    arity: usize,
    values: Vec<Vector>,
}

/// A validated table in dense form.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub dim: usize,
    pub labels: Vec<String>,
    pub grading: Vec<i64>,
    form: Vec<Vec<BigRational>>,
    inv: Vec<Vector>,
    ops: BTreeMap<usize, Operation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    /// Every basis tuple at which the axiom fails.
    pub witnesses: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub checks: Vec<AxiomCheck>,
    pub passed: bool,
}

impl AlgebraReport {
    fn new(checks: Vec<AxiomCheck>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        AlgebraReport { checks, passed }
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

impl AlgebraTable {
    pub fn from_json(s: &str) -> Result<Self, OperadError> {
        serde_json::from_str(s).map_err(|e| OperadError::MalformedTable(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize")
    }

    pub fn algebra(&self) -> Result<Algebra, OperadError> {
        let d = self.dim;
        let bad = |m: String| Err(OperadError::MalformedTable(m));
        if d == 0 {
            return bad("dim must be positive".into());
        }
        let labels = if self.labels.is_empty() {
            (1..=d).map(|i| format!("e{i}")).collect()
        } else if self.labels.len() == d {
            self.labels.clone()
        } else {
            return bad(format!("{} labels for dim {d}", self.labels.len()));
        };
        let vector = |v: &[Q], what: &str| -> Result<Vector, OperadError> {
            if v.len() != d {
                return Err(OperadError::MalformedTable(format!("{what} has length {}, expected {d}", v.len())));
            }
            Ok(v.iter().map(|q| q.0.clone()).collect())
        };
        let square = |rows: &[Vec<Q>], what: &str| -> Result<Vec<Vector>, OperadError> {
            if rows.len() != d {
                return Err(OperadError::MalformedTable(format!("{what} has {} rows, expected {d}", rows.len())));
            }
            rows.iter().enumerate().map(|(i, r)| vector(r, &format!("{what}[{i}]"))).collect()
        };
        if self.mult.len() != d {
            return bad(format!("mult has {} rows, expected {d}", self.mult.len()));
        }
        let mut m2 = Vec::with_capacity(d * d);
        for (i, row) in self.mult.iter().enumerate() {
            m2.extend(square(row, &format!("mult[{i}]"))?);
        }
        let mut ops = BTreeMap::new();
        ops.insert(2, Operation { arity: 2, values: m2 });
        for (k, v) in &self.higher {
            let arity: usize = match k.parse() {
                Ok(a) if a >= 1 && a != 2 => a,
                _ => return bad(format!("higher operation key {k:?} must be an arity other than 2")),
            };
            let mut values = Vec::with_capacity(d.pow(arity as u32));
            flatten(v, arity, d, &mut values).map_err(|m| OperadError::MalformedTable(format!("higher[{k}]: {m}")))?;
            ops.insert(arity, Operation { arity, values });
        }
        let grading = match &self.grading {
            None => vec![0; d],
            Some(g) if g.len() == d => g.clone(),
            Some(g) => return bad(format!("grading has length {}, expected {d}", g.len())),
        };
        Ok(Algebra { dim: d, labels, grading, form: square(&self.form, "form")?, inv: square(&self.inv, "inv")?, ops })
    }
}

fn flatten(v: &serde_json::Value, depth: usize, d: usize, out: &mut Vec<Vector>) -> Result<(), String> {
    let arr = v.as_array().ok_or_else(|| format!("expected an array, got {v}"))?;
    if arr.len() != d {
        return Err(format!("array of length {}, expected {d}", arr.len()));
    }
    if depth == 0 {
        let vec: Result<Vector, String> = arr
            .iter()
            .map(|x| Q::deserialize(x).map(|q| q.0).map_err(|e| e.to_string()))
            .collect();
        out.push(vec?);
        return Ok(());
    }
    for x in arr {
        flatten(x, depth - 1, d, out)?;
    }
    Ok(())
}

impl Algebra {
    fn op(&self, k: usize) -> Option<&Operation> {
        self.ops.get(&k)
    }

    /// `m_k` on basis inputs.
    fn apply_basis<'a>(&self, op: &'a Operation, idx: &[usize]) -> &'a Vector {
        let code = idx.iter().fold(0, |acc, &i| acc * self.dim + i);
        debug_assert_eq!(idx.len(), op.arity);
        &op.values[code]
    }

    /// `m_k` on arbitrary vectors, multilinearly.
    fn apply(&self, op: &Operation, args: &[&Vector]) -> Vector {
        let mut out = vec![BigRational::zero(); self.dim];
        let mut idx = vec![0usize; args.len()];
        self.apply_rec(op, args, 0, BigRational::one(), &mut idx, &mut out);
        out
    }

    fn apply_rec(&self, op: &Operation, args: &[&Vector], k: usize, c: BigRational, idx: &mut Vec<usize>, out: &mut Vector) {
        if k == args.len() {
            for (o, x) in out.iter_mut().zip(self.apply_basis(op, idx)) {
                if !x.is_zero() {
                    *o += &c * x;
                }
            }
            return;
        }
        for (i, a) in args[k].iter().enumerate() {
            if !a.is_zero() {
                idx[k] = i;
                self.apply_rec(op, args, k + 1, &c * a, idx, out);
            }
        }
    }

    fn basis(&self, i: usize) -> Vector {
        let mut v = vec![BigRational::zero(); self.dim];
        v[i] = BigRational::one();
        v
    }

    fn star(&self, v: &Vector) -> Vector {
        let mut out = vec![BigRational::zero(); self.dim];
        for (c, row) in v.iter().zip(&self.inv) {
            if !c.is_zero() {
                for (o, x) in out.iter_mut().zip(row) {
                    *o += c * x;
                }
            }
        }
        out
    }

    fn pair(&self, x: &Vector, y: &Vector) -> BigRational {
        let mut s = BigRational::zero();
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                s += a * b * &self.form[i][j];
            }
        }
        s
    }

    fn names(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.labels[i].clone()).collect()
    }

    fn tuples(&self, k: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        let d = self.dim;
        (0..d.pow(k as u32)).map(move |mut code| {
            let mut idx = vec![0; k];
            for slot in idx.iter_mut().rev() {
                *slot = code % d;
                code /= d;
            }
            idx
        })
    }

    fn check<F>(&self, axiom: &str, k: usize, mut holds: F) -> AxiomCheck
    where
        F: FnMut(&[usize]) -> bool,
    {
        let witnesses: Vec<Vec<String>> = self.tuples(k).filter(|t| !holds(t)).map(|t| self.names(&t)).collect();
        AxiomCheck { axiom: axiom.into(), passed: witnesses.is_empty(), witnesses, note: None }
    }

    fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        self.apply(self.op(2).expect("m_2 is always present"), &[x, y])
    }

    fn form_rank(&self) -> usize {
        let mut m: Vec<Vector> = self.form.clone();
        let mut r = 0;
        for c in 0..self.dim {
            let Some(p) = (r..self.dim).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            for i in 0..self.dim {
                if i != r && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[r][c];
                    for j in c..self.dim {
                        let t = &f * &m[r][j];
                        m[i][j] -= t;
                    }
                }
            }
            r += 1;
        }
        r
    }
}

/// Associativity, a symmetric nondegenerate invariant form, and an involutive
/// anti-automorphism preserving the form.
pub fn check_frobenius_involution(t: &AlgebraTable) -> Result<AlgebraReport, OperadError> {
    let a = t.algebra()?;
    let e: Vec<Vector> = (0..a.dim).map(|i| a.basis(i)).collect();
    let mut checks = Vec::new();
    checks.push(a.check("associative", 3, |t| {
        let (x, y, z) = (&e[t[0]], &e[t[1]], &e[t[2]]);
        a.mul(&a.mul(x, y), z) == a.mul(x, &a.mul(y, z))
    }));
    checks.push(a.check("symmetric form", 2, |t| a.form[t[0]][t[1]] == a.form[t[1]][t[0]]));
    let rank = a.form_rank();
    checks.push(AxiomCheck {
        axiom: "nondegenerate form".into(),
        passed: rank == a.dim,
        witnesses: Vec::new(),
        note: (rank < a.dim).then(|| format!("form has rank {rank} < {}", a.dim)),
    });
    checks.push(a.check("invariant form", 3, |t| {
        let (x, y, z) = (&e[t[0]], &e[t[1]], &e[t[2]]);
        a.pair(&a.mul(x, y), z) == a.pair(x, &a.mul(y, z))
    }));
    checks.push(a.check("involutive", 1, |t| a.star(&a.star(&e[t[0]])) == e[t[0]]));
    checks.push(a.check("anti-automorphism", 2, |t| {
        let (x, y) = (&e[t[0]], &e[t[1]]);
        a.star(&a.mul(x, y)) == a.mul(&a.star(y), &a.star(x))
    }));
    checks.push(a.check("preserves form", 2, |t| {
        let (x, y) = (&e[t[0]], &e[t[1]]);
        a.pair(&a.star(x), &a.star(y)) == a.pair(x, y)
    }));
    Ok(AlgebraReport::new(checks))
}

/// `m_k(x_1, .., x_k)* = (-1)^(ε + k(k+1)/2 - 1) m_k(x_k*, .., x_1*)`, with `ε`
/// the Koszul sign of reversing the inputs, together with the `A∞` relations
/// `Σ (-1)^(r + st) m_(r+1+t)(1^r ⊗ m_s ⊗ 1^t) = 0` and degree checks for
/// `|m_k| = 2 - k`.
pub fn check_involutive_ainfty_signs(t: &AlgebraTable) -> Result<AlgebraReport, OperadError> {
    let a = t.algebra()?;
    let e: Vec<Vector> = (0..a.dim).map(|i| a.basis(i)).collect();
    let deg = &a.grading;
    let mut checks = Vec::new();
    checks.push(a.check("involution preserves degree", 1, |t| {
        a.inv[t[0]].iter().enumerate().all(|(j, c)| c.is_zero() || deg[j] == deg[t[0]])
    }));
    checks.push(a.check("involutive", 1, |t| a.star(&a.star(&e[t[0]])) == e[t[0]]));
    for (&k, op) in &a.ops {
        checks.push(a.check(&format!("m{k} degree"), k, |t| {
            let target: i64 = t.iter().map(|&i| deg[i]).sum::<i64>() + 2 - k as i64;
            a.apply_basis(op, t).iter().enumerate().all(|(j, c)| c.is_zero() || deg[j] == target)
        }));
        let base = k * (k + 1) / 2 - 1;
        checks.push(a.check(&format!("m{k} sign law"), k, |t| {
            let mut eps = base;
            for i in 0..k {
                for j in i + 1..k {
                    eps += (deg[t[i]] * deg[t[j]]).rem_euclid(2) as usize;
                }
            }
            let lhs = a.star(a.apply_basis(op, t));
            let stars: Vec<Vector> = t.iter().rev().map(|&i| a.star(&e[i])).collect();
            let refs: Vec<&Vector> = stars.iter().collect();
            let mut rhs = a.apply(op, &refs);
            if eps % 2 == 1 {
                rhs.iter_mut().for_each(|x| *x = -x.clone());
            }
            lhs == rhs
        }));
    }
    let kmax = *a.ops.keys().max().expect("m_2 is always present");
    for n in 1..=2 * kmax - 1 {
        let terms: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|r| (1..=n - r).map(move |s| (r, s, n - r - s)))
            .filter(|&(r, s, t)| a.op(s).is_some() && a.op(r + 1 + t).is_some())
            .collect();
        if terms.is_empty() {
            continue;
        }
        checks.push(a.check(&format!("A-infinity relation n={n}"), n, |idx| {
            let mut sum = vec![BigRational::zero(); a.dim];
            for &(r, s, t) in &terms {
                let inner = a.apply_basis(a.op(s).unwrap(), &idx[r..r + s]);
                if inner.iter().all(Zero::is_zero) {
                    continue;
                }
                // Koszul sign of moving m_s past x_1 .. x_r
                let moved: i64 = idx[..r].iter().map(|&i| deg[i]).sum::<i64>() * (2 - s as i64);
                let sign = (r + s * t) as i64 + moved;
                let args: Vec<&Vector> =
                    idx[..r].iter().map(|&i| &e[i]).chain([inner]).chain(idx[r + s..].iter().map(|&i| &e[i])).collect();
                let v = a.apply(a.op(r + 1 + t).unwrap(), &args);
                for (o, x) in sum.iter_mut().zip(v) {
                    if sign.rem_euclid(2) == 0 {
                        *o += x;
                    } else {
                        *o -= x;
                    }
                }
            }
            sum.iter().all(Zero::is_zero)
        }));
    }
    Ok(AlgebraReport::new(checks))
}

/// Reads a rational from `"p/q"`, for building tables by hand.
pub fn q(s: &str) -> Q {
    s.parse().expect("valid rational literal")
}

/// Stock tables used by the examples and tests.
pub mod samples {
    use super::*;

    fn zeros(d: usize) -> Vec<Q> {
        vec![Q::zero(); d]
    }

    fn unit(d: usize, i: usize) -> Vec<Q> {
        let mut v = zeros(d);
        v[i] = Q::int(1);
        v
    }

    /// `M_2(Q)` with the trace form; `transpose = false` uses the identity involution.
    pub fn matrix_algebra(transpose: bool) -> AlgebraTable {
        // E11, E12, E21, E22 ~ (0,0), (0,1), (1,0), (1,1)
        let idx = |r: usize, c: usize| 2 * r + c;
        let mut mult = vec![vec![zeros(4); 4]; 4];
        let mut form = vec![zeros(4); 4];
        for (a, b) in (0..2).flat_map(|a| (0..2).map(move |b| (a, b))) {
            for (c, d) in (0..2).flat_map(|c| (0..2).map(move |d| (c, d))) {
                if b == c {
                    mult[idx(a, b)][idx(c, d)] = unit(4, idx(a, d));
                }
                if b == c && a == d {
                    form[idx(a, b)][idx(c, d)] = Q::int(1);
                }
            }
        }
        let inv = (0..4).map(|i| if transpose { unit(4, idx(i % 2, i / 2)) } else { unit(4, i) }).collect();
        AlgebraTable {
            dim: 4,
            labels: ["E11", "E12", "E21", "E22"].map(String::from).to_vec(),
            mult,
            form,
            inv,
            grading: None,
            higher: BTreeMap::new(),
        }
    }

    /// The group algebra of `Z/n` with `g ↦ g⁻¹` and `⟨x, y⟩` the coefficient of `1` in `xy`.
    pub fn cyclic_group_algebra(n: usize) -> AlgebraTable {
        let mult = (0..n).map(|a| (0..n).map(|b| unit(n, (a + b) % n)).collect()).collect();
        let form = (0..n).map(|a| (0..n).map(|b| Q::int(((a + b) % n == 0) as i64)).collect()).collect();
        let inv = (0..n).map(|a| unit(n, (n - a) % n)).collect();
        AlgebraTable {
            dim: n,
            labels: (0..n).map(|a| format!("g{a}")).collect(),
            mult,
            form,
            inv,
            grading: None,
            higher: BTreeMap::new(),
        }
    }

    /// The exterior algebra on two odd generators, with the identity involution.
    pub fn exterior_algebra() -> AlgebraTable {
        // 1, x, y, xy in degrees 0, 1, 1, 2
        let mut mult = vec![vec![zeros(4); 4]; 4];
        for i in 0..4 {
            mult[0][i] = unit(4, i);
            mult[i][0] = unit(4, i);
        }
        mult[1][2] = unit(4, 3);
        let mut neg = unit(4, 3);
        neg[3] = Q::int(-1);
        mult[2][1] = neg;
        let mut form = vec![zeros(4); 4];
        form[0][3] = Q::int(1);
        form[3][0] = Q::int(1);
        form[1][2] = Q::int(1);
        form[2][1] = Q::int(-1);
        AlgebraTable {
            dim: 4,
            labels: ["1", "x", "y", "xy"].map(String::from).to_vec(),
            mult,
            form,
            inv: (0..4).map(|i| unit(4, i)).collect(),
            grading: Some(vec![0, 1, 1, 2]),
            higher: BTreeMap::new(),
        }
    }

    /// `p, q` in degree 0 and `y` in degree -1, `m_2 = 0`,
    /// `m_3(p, p, q) = y`, `m_3(p, q, q) = -y`, and `p* = q`, `y* = y`.
    pub fn square_zero_m3(m3_pqq: i64) -> AlgebraTable {
        let d = 3;
        let mut m3 = vec![vec![vec![vec![0i64; d]; d]; d]; d];
        m3[0][0][1][2] = 1;
        m3[0][1][1][2] = m3_pqq;
        let mut higher = BTreeMap::new();
        higher.insert("3".to_string(), serde_json::to_value(m3).expect("integers serialize"));
        AlgebraTable {
            dim: d,
            labels: ["p", "q", "y"].map(String::from).to_vec(),
            mult: vec![vec![zeros(d); d]; d],
            form: (0..d).map(|i| unit(d, i)).collect(),
            inv: vec![unit(d, 1), unit(d, 0), unit(d, 2)],
            grading: Some(vec![0, 0, -1]),
            higher,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;

    #[test]
    fn rationals_round_trip() {
        assert_eq!(q("-6/4").to_string(), "-3/2");
        let v: Vec<Q> = serde_json::from_str(r#"[1, "2/3", "-4"]"#).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1","2/3","-4"]"#);
        assert!("1/0".parse::<Q>().is_err());
    }

    #[test]
    fn matrix_transpose_passes() {
        let r = check_frobenius_involution(&matrix_algebra(true)).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn matrix_identity_fails() {
        let r = check_frobenius_involution(&matrix_algebra(false)).unwrap();
        assert!(!r.passed);
        let anti = r.check("anti-automorphism").unwrap();
        assert!(!anti.passed);
        assert!(anti.witnesses.contains(&vec!["E12".to_string(), "E21".to_string()]));
        assert!(r.check("associative").unwrap().passed);
    }

    #[test]
    fn group_algebra_passes() {
        assert!(check_frobenius_involution(&cyclic_group_algebra(3)).unwrap().passed);
    }

    #[test]
    fn graded_signs() {
        let r = check_involutive_ainfty_signs(&exterior_algebra()).unwrap();
        assert!(r.passed, "{r:?}");
        let r = check_involutive_ainfty_signs(&square_zero_m3(-1)).unwrap();
        assert!(r.passed, "{r:?}");
        let r = check_involutive_ainfty_signs(&square_zero_m3(1)).unwrap();
        assert!(!r.check("m3 sign law").unwrap().passed);
    }

    #[test]
    fn json_round_trip() {
        let t = square_zero_m3(-1);
        let back = AlgebraTable::from_json(&t.to_json()).unwrap();
        assert!(check_involutive_ainfty_signs(&back).unwrap().passed);
        assert!(matches!(AlgebraTable::from_json(r#"{"dim": 2}"#), Err(OperadError::MalformedTable(_))));
    }
}
