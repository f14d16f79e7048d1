//! The operad `MAss`: Möbius corollas and their composition.
//!
//! A corolla with `n` inputs is a linear order of the labels `1..=n` (the
//! clockwise order after the output) and `n + 1` colour bits, indexed by label
//! with `0` for the output. Reflection reverses the order and flips every colour;
//! stored corollas are reflection-normal, i.e. the output has colour `0`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::HalfEdgeGraph;

use super::OperadError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MobiusCorolla {
    input_order: Vec<u32>,
    colors: Vec<u8>,
}

impl MobiusCorolla {
    /// Normalizes on construction.
    pub fn new(input_order: Vec<u32>, colors: Vec<u8>) -> Result<Self, OperadError> {
        let n = input_order.len();
        if colors.len() != n + 1 {
            return Err(OperadError::InvalidCorolla(format!("{} colours for {n} inputs", colors.len())));
        }
        let mut seen = vec![false; n + 1];
        for &l in &input_order {
            let l = l as usize;
            if l == 0 || l > n || seen[l] {
                return Err(OperadError::InvalidCorolla(format!("input order {input_order:?} is not a permutation")));
            }
            seen[l] = true;
        }
        if colors.iter().any(|&c| c > 1) {
            return Err(OperadError::InvalidCorolla("colours must be 0 or 1".into()));
        }
        Ok(MobiusCorolla { input_order, colors }.normalized())
    }

    /// The planar corolla with the given order and every colour 0.
    pub fn planar(input_order: Vec<u32>) -> Result<Self, OperadError> {
        let n = input_order.len();
        Self::new(input_order, vec![0; n + 1])
    }

    /// The binary product `m`.
    pub fn m() -> Self {
        MobiusCorolla { input_order: vec![1, 2], colors: vec![0; 3] }
    }

    /// All `2^n n!` normalized corollas with `n` inputs, sorted.
    pub fn all(n: usize) -> Vec<Self> {
        let mut orders = Vec::new();
        permutations(&mut (1..=n as u32).collect(), 0, &mut orders);
        let mut out = Vec::with_capacity(orders.len() << n);
        for order in orders {
            for bits in 0u32..1 << n {
                let mut colors = vec![0u8; n + 1];
                for (i, c) in colors.iter_mut().enumerate().skip(1) {
                    *c = ((bits >> (i - 1)) & 1) as u8;
                }
                out.push(MobiusCorolla { input_order: order.clone(), colors });
            }
        }
        out.sort();
        out
    }

    pub fn arity(&self) -> usize {
        self.input_order.len()
    }

    pub fn input_order(&self) -> &[u32] {
        &self.input_order
    }

    /// Colour of label `i`, `0` being the output.
    pub fn color(&self, i: usize) -> u8 {
        self.colors[i]
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    /// Reverses the order and flips all colours, without renormalizing.
    fn reflected(&self) -> Self {
        MobiusCorolla {
            input_order: self.input_order.iter().rev().copied().collect(),
            colors: self.colors.iter().map(|c| c ^ 1).collect(),
        }
    }

    fn normalized(self) -> Self {
        if self.colors[0] == 1 {
            self.reflected()
        } else {
            self
        }
    }

    /// Left action of the generator `a` of `K = MAss(1)`: twist the output.
    pub fn act_output(&self) -> Self {
        let mut c = self.clone();
        c.colors[0] ^= 1;
        c.normalized()
    }

    /// Right action of `a` at input `i`: twist that input.
    pub fn act_input(&self, i: usize) -> Result<Self, OperadError> {
        if i == 0 || i > self.arity() {
            return Err(OperadError::PositionOutOfRange { position: i, arity: self.arity() });
        }
        let mut c = self.clone();
        c.colors[i] ^= 1;
        Ok(c)
    }

    /// Relabels inputs: label `j` becomes `sigma[j - 1]`.
    pub fn relabel(&self, sigma: &[u32]) -> Self {
        assert_eq!(sigma.len(), self.arity(), "relabelling must be a permutation of the inputs");
        let mut colors = vec![0u8; self.colors.len()];
        colors[0] = self.colors[0];
        for j in 1..=self.arity() {
            colors[sigma[j - 1] as usize] = self.colors[j];
        }
        MobiusCorolla { input_order: self.input_order.iter().map(|&j| sigma[j as usize - 1]).collect(), colors }
    }

    /// Parity of the input order plus the number of twisted inputs, for normalized corollas.
    pub fn parity(&self) -> u8 {
        let o = &self.input_order;
        let mut inv = 0usize;
        for i in 0..o.len() {
            for j in i + 1..o.len() {
                if o[i] > o[j] {
                    inv += 1;
                }
            }
        }
        let twisted: usize = self.colors[1..].iter().map(|&c| c as usize).sum();
        ((inv + twisted) % 2) as u8
    }

    /// The corolla as a one-vertex graph with legs `1..=n` and output leg `n + 1`.
    pub fn to_graph(&self) -> HalfEdgeGraph {
        let n = self.arity();
        // half-edge 0 is the output, half-edge k the k-th input in planar order
        let word: Vec<usize> = (0..=n).collect();
        let mut legs = vec![(n as u32 + 1, 0)];
        let mut color = vec![self.colors[0]];
        for (k, &l) in self.input_order.iter().enumerate() {
            legs.push((l, k + 1));
            color.push(self.colors[l as usize]);
        }
        HalfEdgeGraph::from_rotation(n + 1, &[word], &[], &legs, color).expect("corollas are valid graphs")
    }
}

impl fmt::Display for MobiusCorolla {
    /// `[3~,1,2~]` lists the inputs clockwise after the output, `~` marking colour 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, &l) in self.input_order.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}{}", if self.colors[l as usize] == 1 { "~" } else { "" })?;
        }
        write!(f, "]")
    }
}

fn permutations(v: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

/// `x ∘_i y`: graft the output of `y` into input `i` of `x` and contract.
///
/// Labels follow the operadic convention: inputs of `x` below `i` keep their
/// label, those above shift by `m - 1`, and input `k` of `y` becomes `k + i - 1`.
pub fn compose_mass(x: &MobiusCorolla, i: usize, y: &MobiusCorolla) -> Result<MobiusCorolla, OperadError> {
    let (n, m) = (x.arity(), y.arity());
    if i == 0 || i > n {
        return Err(OperadError::PositionOutOfRange { position: i, arity: n });
    }
    // make the two halves of the new edge agree
    let y = if x.colors[i] != y.colors[0] { y.reflected() } else { y.clone() };
    let shift_x = |j: u32| if (j as usize) < i { j } else { j + m as u32 - 1 };
    let shift_y = |k: u32| k + i as u32 - 1;
    let mut colors = vec![0u8; n + m];
    colors[0] = x.colors[0];
    let mut input_order = Vec::with_capacity(n + m - 1);
    for &j in &x.input_order {
        if j as usize == i {
            for &k in &y.input_order {
                input_order.push(shift_y(k));
                colors[shift_y(k) as usize] = y.colors[k as usize];
            }
        } else {
            input_order.push(shift_x(j));
            colors[shift_x(j) as usize] = x.colors[j as usize];
        }
    }
    Ok(MobiusCorolla { input_order, colors }.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(MobiusCorolla::all(2).len(), 8);
        assert_eq!(MobiusCorolla::all(3).len(), 48);
    }

    #[test]
    fn reflected_composite() {
        // v2: output and the edge coloured 1, input 3 coloured 0; v1: inputs 1, 2~
        let v2 = MobiusCorolla::new(vec![1, 2], vec![1, 1, 0]).unwrap();
        let v1 = MobiusCorolla::new(vec![1, 2], vec![0, 0, 1]).unwrap();
        let c = compose_mass(&v2, 1, &v1).unwrap();
        assert_eq!(c, MobiusCorolla::new(vec![3, 1, 2], vec![0, 0, 1, 1]).unwrap());
        assert_eq!(c.to_string(), "[3~,1,2~]");
    }

    #[test]
    fn out_of_range() {
        let m = MobiusCorolla::m();
        assert_eq!(compose_mass(&m, 3, &m), Err(OperadError::PositionOutOfRange { position: 3, arity: 2 }));
    }
}
