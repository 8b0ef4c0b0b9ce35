use crate::term::{ClTerm, Combinator};

/// Families of CL terms characterised by forbidden head patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormalClass {
    /// No `K t1 t2`, `I t`.
    S,
    /// No `K t1 t2`, `I t`, `B t1 t2 t3`, `B' t1 t2 t3 t4`.
    T,
    /// No `K t1 t2`, `I t`, `B t1 t2 t3`, `B* t1 t2 t3 t4`.
    TStar,
}

impl NormalClass {
    /// Most arguments a spine headed by `c` may carry, if bounded.
    pub fn max_args(self, c: Combinator) -> Option<usize> {
        match (self, c) {
            (_, Combinator::K) => Some(1),
            (_, Combinator::I) => Some(0),
            (NormalClass::T | NormalClass::TStar, Combinator::B) => Some(2),
            (NormalClass::T, Combinator::BPrime) | (NormalClass::TStar, Combinator::BStar) => {
                Some(3)
            }
            _ => None,
        }
    }

    pub fn contains(self, t: &ClTerm) -> bool {
        let (head, args) = t.spine();
        if let ClTerm::Prim(c) = head {
            if self.max_args(*c).is_some_and(|max| args.len() > max) {
                return false;
            }
        }
        args.into_iter().all(|a| self.contains(a))
    }
}

pub fn is_t_normal(t: &ClTerm) -> bool {
    NormalClass::T.contains(t)
}

pub fn is_s_normal(t: &ClTerm) -> bool {
    NormalClass::S.contains(t)
}

pub fn is_tstar_normal(t: &ClTerm) -> bool {
    NormalClass::TStar.contains(t)
}
