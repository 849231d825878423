//! Fixed-size real/complex 3-vector and matrix arithmetic.
//!
//! Everything in this crate is constant-size linear algebra at a momentum
//! point, so these are plain `Copy` types over stack arrays.

use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);

/// Real 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const EX: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const EY: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const EZ: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn normalized(self) -> Vec3 {
        self * (1.0 / self.norm())
    }

    pub fn comp(self, j: usize) -> f64 {
        match j {
            0 => self.x,
            1 => self.y,
            2 => self.z,
            _ => panic!("component index {j} out of range"),
        }
    }

    /// Standard basis vector e_j.
    pub fn basis(j: usize) -> Vec3 {
        match j {
            0 => Vec3::EX,
            1 => Vec3::EY,
            2 => Vec3::EZ,
            _ => panic!("basis index {j} out of range"),
        }
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

/// Complex 2-vector (polarization coefficients).
pub type CVec2 = [C64; 2];

/// Complex 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CVec3(pub [C64; 3]);

impl CVec3 {
    pub const ZERO: CVec3 = CVec3([C64::new(0.0, 0.0); 3]);

    pub fn new(a: C64, b: C64, c: C64) -> Self {
        CVec3([a, b, c])
    }

    pub fn from_real(v: Vec3) -> Self {
        CVec3([v.x.into(), v.y.into(), v.z.into()])
    }

    /// Hermitian inner product, conjugating `self`.
    pub fn dot(self, o: CVec3) -> C64 {
        self.0
            .iter()
            .zip(o.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Bilinear (unconjugated) product.
    pub fn dot_bilinear(self, o: CVec3) -> C64 {
        self.0
            .iter()
            .zip(o.0.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn cross_real(self, v: Vec3) -> CVec3 {
        // (self x v) with v real
        let [a, b, c] = self.0;
        CVec3([
            b * v.z - c * v.y,
            c * v.x - a * v.z,
            a * v.y - b * v.x,
        ])
    }

    pub fn norm_sq(self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn conj(self) -> CVec3 {
        CVec3([self.0[0].conj(), self.0[1].conj(), self.0[2].conj()])
    }

    pub fn scale(self, s: C64) -> CVec3 {
        CVec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
}

impl Add for CVec3 {
    type Output = CVec3;
    fn add(self, o: CVec3) -> CVec3 {
        CVec3([
            self.0[0] + o.0[0],
            self.0[1] + o.0[1],
            self.0[2] + o.0[2],
        ])
    }
}

impl Sub for CVec3 {
    type Output = CVec3;
    fn sub(self, o: CVec3) -> CVec3 {
        CVec3([
            self.0[0] - o.0[0],
            self.0[1] - o.0[1],
            self.0[2] - o.0[2],
        ])
    }
}

impl Index<usize> for CVec3 {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for CVec3 {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.0[i]
    }
}

/// Complex 3x3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat3(pub [[C64; 3]; 3]);

impl CMat3 {
    pub const ZERO: CMat3 = CMat3([[C64::new(0.0, 0.0); 3]; 3]);

    pub fn identity() -> CMat3 {
        let mut m = CMat3::ZERO;
        for i in 0..3 {
            m.0[i][i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows_real(r: [[f64; 3]; 3]) -> CMat3 {
        let mut m = CMat3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = r[i][j].into();
            }
        }
        m
    }

    pub fn diag_real(d: [f64; 3]) -> CMat3 {
        let mut m = CMat3::ZERO;
        for i in 0..3 {
            m.0[i][i] = d[i].into();
        }
        m
    }

    /// Outer product a b†.
    pub fn outer(a: CVec3, b: CVec3) -> CMat3 {
        let mut m = CMat3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = a.0[i] * b.0[j].conj();
            }
        }
        m
    }

    pub fn adjoint(&self) -> CMat3 {
        let mut m = CMat3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> CMat3 {
        let mut m = CMat3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn mul_vec(&self, v: CVec3) -> CVec3 {
        let mut out = CVec3::ZERO;
        for i in 0..3 {
            out.0[i] = self.0[i][0] * v.0[0] + self.0[i][1] * v.0[1] + self.0[i][2] * v.0[2];
        }
        out
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn scale(&self, s: C64) -> CMat3 {
        let mut m = *self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] *= s;
            }
        }
        m
    }

    pub fn scale_re(&self, s: f64) -> CMat3 {
        self.scale(C64::new(s, 0.0))
    }

    /// Largest entry-wise |self - other|.
    pub fn max_abs_diff(&self, o: &CMat3) -> f64 {
        let mut d = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                d = d.max((self.0[i][j] - o.0[i][j]).norm());
            }
        }
        d
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs_diff(&CMat3::ZERO)
    }

    /// Quadratic form h† M h.
    pub fn quadratic_form(&self, h: CVec3) -> C64 {
        h.dot(self.mul_vec(h))
    }
}

impl Add for CMat3 {
    type Output = CMat3;
    fn add(self, o: CMat3) -> CMat3 {
        let mut m = CMat3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[i][j] + o.0[i][j];
            }
        }
        m
    }
}

impl Sub for CMat3 {
    type Output = CMat3;
    fn sub(self, o: CMat3) -> CMat3 {
        let mut m = CMat3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[i][j] - o.0[i][j];
            }
        }
        m
    }
}

impl Mul for CMat3 {
    type Output = CMat3;
    fn mul(self, o: CMat3) -> CMat3 {
        let mut m = CMat3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                let mut s = C64::new(0.0, 0.0);
                for k in 0..3 {
                    s += self.0[i][k] * o.0[k][j];
                }
                m.0[i][j] = s;
            }
        }
        m
    }
}

/// Complex 2x2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat2(pub [[C64; 2]; 2]);

impl CMat2 {
    pub const ZERO: CMat2 = CMat2([[C64::new(0.0, 0.0); 2]; 2]);

    pub fn identity() -> CMat2 {
        CMat2([
            [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        ])
    }

    pub fn quadratic_form(&self, g: CVec2) -> C64 {
        let mut s = C64::new(0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                s += g[i].conj() * self.0[i][j] * g[j];
            }
        }
        s
    }

    pub fn mul_vec(&self, v: CVec2) -> CVec2 {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    pub fn max_abs_diff(&self, o: &CMat2) -> f64 {
        let mut d = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.0[i][j] - o.0[i][j]).norm());
            }
        }
        d
    }
}

impl Add for CMat2 {
    type Output = CMat2;
    fn add(self, o: CMat2) -> CMat2 {
        let mut m = CMat2::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[i][j] + o.0[i][j];
            }
        }
        m
    }
}
