use std::cmp::Ordering;

/// Maximum number of variables in one ring.
pub const MAX_VARS: usize = 32;

/// Exponent vector with cached total degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    deg: u32,
    e: [u8; MAX_VARS],
}

/// Monomial orders. Variables are ranked `z0 > z1 > ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MonoOrder {
    DegRevLex,
    /// Compares the exponent of the given variable first, then degrevlex.
    Elim(usize),
}

impl Default for MonoOrder {
    fn default() -> Self {
        MonoOrder::DegRevLex
    }
}

impl Mono {
    pub const ONE: Mono = Mono { deg: 0, e: [0; MAX_VARS] };

    pub fn var(i: usize) -> Mono {
        Mono::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, k: u8) -> Mono {
        let mut m = Mono::ONE;
        m.e[i] = k;
        m.deg = k as u32;
        m
    }

    pub fn from_exponents(ex: &[u8]) -> Mono {
        let mut m = Mono::ONE;
        for (i, &x) in ex.iter().enumerate() {
            m.e[i] = x;
        }
        m.deg = ex.iter().map(|&x| x as u32).sum();
        m
    }

    pub fn exp(&self, i: usize) -> u8 {
        self.e[i]
    }

    pub fn exponents(&self) -> &[u8; MAX_VARS] {
        &self.e
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.e[i] = m.e[i].checked_add(o.e[i]).expect("exponent overflow");
        }
        m.deg += o.deg;
        m
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.deg <= o.deg && self.e.iter().zip(&o.e).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        let mut m = *o;
        for i in 0..MAX_VARS {
            m.e[i] -= self.e[i];
        }
        m.deg -= self.deg;
        m
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        let mut m = Mono::ONE;
        for i in 0..MAX_VARS {
            m.e[i] = self.e[i].max(o.e[i]);
            m.deg += m.e[i] as u32;
        }
        m
    }

    pub fn coprime(&self, o: &Mono) -> bool {
        self.e.iter().zip(&o.e).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Removes variable `v` from the monomial.
    pub fn without(&self, v: usize) -> Mono {
        let mut m = *self;
        m.deg -= m.e[v] as u32;
        m.e[v] = 0;
        m
    }

    pub fn cmp_in(&self, o: &Mono, ord: MonoOrder) -> Ordering {
        if let MonoOrder::Elim(v) = ord {
            match self.e[v].cmp(&o.e[v]) {
                Ordering::Equal => {}
                c => return c,
            }
        }
        match self.deg.cmp(&o.deg) {
            Ordering::Equal => {}
            c => return c,
        }
        for i in (0..MAX_VARS).rev() {
            if self.e[i] != o.e[i] {
                return o.e[i].cmp(&self.e[i]);
            }
        }
        Ordering::Equal
    }
}
