use super::SpinCoefficients;
use crate::poly::RatFun;
use crate::walker::{MetricTensor, Op, Tetrad, Vec4};
use std::array::from_fn;
use thiserror::Error;

/// One spinor index: unprimed or primed, upper or lower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub primed: bool,
    pub upper: bool,
}

impl Slot {
    pub const UP: Slot = Slot { primed: false, upper: true };
    pub const DOWN: Slot = Slot { primed: false, upper: false };
    pub const UP_P: Slot = Slot { primed: true, upper: true };
    pub const DOWN_P: Slot = Slot { primed: true, upper: false };
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValenceError {
    #[error("expected {expected} components for {slots} indices, got {got}")]
    Count { slots: usize, expected: usize, got: usize },
    #[error("cannot contract slots {0} and {1}")]
    Contract(usize, usize),
    #[error("slot {0} out of range")]
    Range(usize),
}

/// A spinor field in dyad components. Component `k` has the index value of slot `i`
/// in bit `n - 1 - i` of `k`, so slot 0 varies slowest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadField {
    slots: Vec<Slot>,
    comps: Vec<RatFun>,
}

fn bit(k: usize, n: usize, i: usize) -> usize {
    (k >> (n - 1 - i)) & 1
}

impl DyadField {
    pub fn new(slots: Vec<Slot>, comps: Vec<RatFun>) -> Result<DyadField, ValenceError> {
        let expected = 1usize << slots.len();
        if comps.len() != expected {
            return Err(ValenceError::Count {
                slots: slots.len(),
                expected,
                got: comps.len(),
            });
        }
        Ok(DyadField { slots, comps })
    }

    pub fn zero(slots: Vec<Slot>) -> DyadField {
        let n = 1usize << slots.len();
        DyadField {
            slots,
            comps: vec![RatFun::zero(); n],
        }
    }

    pub fn scalar(f: RatFun) -> DyadField {
        DyadField {
            slots: vec![],
            comps: vec![f],
        }
    }

    /// Rank-one field with components `(c0, c1)`.
    pub fn spinor(slot: Slot, c0: RatFun, c1: RatFun) -> DyadField {
        DyadField {
            slots: vec![slot],
            comps: vec![c0, c1],
        }
    }

    /// Field built from a component function of the index tuple.
    pub fn from_fn(slots: Vec<Slot>, f: impl Fn(&[usize]) -> RatFun) -> DyadField {
        let n = slots.len();
        let comps = (0..1usize << n)
            .map(|k| {
                let idx: Vec<usize> = (0..n).map(|i| bit(k, n, i)).collect();
                f(&idx)
            })
            .collect();
        DyadField { slots, comps }
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn components(&self) -> &[RatFun] {
        &self.comps
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.slots.len(), "index arity");
        idx.iter().fold(0, |acc, &i| (acc << 1) | (i & 1))
    }

    pub fn get(&self, idx: &[usize]) -> &RatFun {
        &self.comps[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: RatFun) {
        let k = self.offset(idx);
        self.comps[k] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatFun::is_zero)
    }

    pub fn map(&self, f: impl Fn(&RatFun) -> RatFun) -> DyadField {
        DyadField {
            slots: self.slots.clone(),
            comps: self.comps.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, k: &RatFun) -> DyadField {
        self.map(|c| c * k)
    }

    pub fn add(&self, other: &DyadField) -> Result<DyadField, ValenceError> {
        if self.slots != other.slots {
            return Err(ValenceError::Count {
                slots: self.rank(),
                expected: self.comps.len(),
                got: other.comps.len(),
            });
        }
        Ok(DyadField {
            slots: self.slots.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &DyadField) -> Result<DyadField, ValenceError> {
        self.add(&other.map(|c| -c))
    }

    /// Outer product, slots of `self` first.
    pub fn tensor(&self, other: &DyadField) -> DyadField {
        let mut slots = self.slots.clone();
        slots.extend_from_slice(&other.slots);
        let mut comps = Vec::with_capacity(self.comps.len() * other.comps.len());
        for a in &self.comps {
            for b in &other.comps {
                comps.push(a * b);
            }
        }
        DyadField { slots, comps }
    }

    /// Flip the position of slot `i` with the symplectic form
    /// (`x_0 = -x^1`, `x_1 = x^0` and inversely).
    pub fn flip(&self, i: usize) -> Result<DyadField, ValenceError> {
        if i >= self.rank() {
            return Err(ValenceError::Range(i));
        }
        let n = self.rank();
        let mut slots = self.slots.clone();
        let lowering = slots[i].upper;
        slots[i].upper = !lowering;
        let comps = (0..self.comps.len())
            .map(|k| {
                let partner = k ^ (1 << (n - 1 - i));
                let v = &self.comps[partner];
                let first = bit(k, n, i) == 0;
                // lowering: x_0 = -x^1, x_1 = x^0; raising: x^0 = x_1, x^1 = -x_0
                if first == lowering {
                    -v
                } else {
                    v.clone()
                }
            })
            .collect();
        Ok(DyadField { slots, comps })
    }

    /// Contract an upper slot with a lower slot of the same kind.
    pub fn contract(&self, i: usize, j: usize) -> Result<DyadField, ValenceError> {
        let n = self.rank();
        if i >= n || j >= n || i == j {
            return Err(ValenceError::Contract(i, j));
        }
        let (si, sj) = (self.slots[i], self.slots[j]);
        if si.primed != sj.primed || si.upper == sj.upper {
            return Err(ValenceError::Contract(i, j));
        }
        let keep: Vec<usize> = (0..n).filter(|&s| s != i && s != j).collect();
        let slots = keep.iter().map(|&s| self.slots[s]).collect();
        Ok(DyadField::from_fn(slots, |idx| {
            let mut full = vec![0usize; n];
            for (p, &s) in keep.iter().enumerate() {
                full[s] = idx[p];
            }
            let mut acc = RatFun::zero();
            for c in 0..2 {
                full[i] = c;
                full[j] = c;
                acc = &acc + self.get(&full);
            }
            acc
        }))
    }

    /// Contract slot `i` with the given field's single slot (which must be of opposite position).
    pub fn contract_with(&self, i: usize, v: &DyadField) -> Result<DyadField, ValenceError> {
        let t = self.tensor(v);
        t.contract(i, self.rank())
    }

    /// `nabla_{AA'}` of the field in the frame of `s`, with the two new lower slots in front.
    pub fn covariant_derivative(&self, s: &SpinCoefficients, t: &Tetrad) -> DyadField {
        let n = self.rank();
        let mut slots = vec![Slot::DOWN, Slot::DOWN_P];
        slots.extend_from_slice(&self.slots);
        DyadField::from_fn(slots, |idx| {
            let (a, ap) = (idx[0], idx[1]);
            let rest = &idx[2..];
            let mut acc = t.apply(Op::from_dyad(a, ap), self.get(rest));
            let mut cur = rest.to_vec();
            for k in 0..n {
                let slot = self.slots[k];
                let orig = rest[k];
                for c in 0..2 {
                    cur[k] = c;
                    let comp = self.get(&cur);
                    if comp.is_zero() {
                        continue;
                    }
                    if slot.upper {
                        let g = s.connection(slot.primed, a, ap, c, orig);
                        acc = &acc + &(&g * comp);
                    } else {
                        let g = s.connection(slot.primed, a, ap, orig, c);
                        acc = &acc - &(&g * comp);
                    }
                }
                cur[k] = orig;
            }
            acc
        })
    }
}

/// Coordinate components of a covector given by dyad components `w[A][A']`.
pub fn dyad_covector_to_coord(metric: &MetricTensor, t: &Tetrad, w: &[[RatFun; 2]; 2]) -> Vec4 {
    let l = metric.lower(&t.l);
    let n = metric.lower(&t.n);
    let m = metric.lower(&t.m);
    let mt = metric.lower(&t.mt);
    from_fn(|a| {
        &(&(&w[0][0] * &n[a]) + &(&w[1][1] * &l[a])) - &(&(&w[0][1] * &mt[a]) + &(&w[1][0] * &m[a]))
    })
}

/// Dyad components `w(e_{AA'})` of a coordinate covector.
pub fn coord_covector_to_dyad(t: &Tetrad, w: &Vec4) -> [[RatFun; 2]; 2] {
    from_fn(|a| {
        from_fn(|ap| {
            let leg = t.leg(Op::from_dyad(a, ap));
            (0..4).map(|i| &leg[i] * &w[i]).sum()
        })
    })
}
