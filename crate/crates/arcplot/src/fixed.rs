//! 16.16 fixed-point scalars and points.
//!
//! `Fixed` is a signed 32-bit integer whose low 16 bits are fractional:
//! the represented value is `raw / 65536`. Coordinates are in pixels,
//! angles in radians. All arithmetic is plain two's-complement integer
//! arithmetic; right shifts are arithmetic (sign-propagating), i.e.
//! floor division by a power of two. Conversions from floating point
//! truncate toward zero, so results stay bit-comparable with C code
//! that assigns a float expression to a 32-bit integer.
//!
//! Debug builds trap on 32-bit overflow (Rust's integer overflow
//! checks); release builds wrap like the reference C. Callers keep
//! coordinates within ±16384 px so that sums of two coordinates cannot
//! overflow.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Shr, Sub, SubAssign};

/// Largest coordinate magnitude, in pixels, accepted at public entry
/// points. Keeps corner-point sums such as `x_P + x_Q` inside 32 bits.
pub const MAX_COORD_PX: f64 = 16384.0;

/// 16.16 fixed-point scalar.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fixed(i32);

impl Fixed {
    pub const ZERO: Fixed = Fixed(0);
    pub const ONE: Fixed = Fixed(1 << 16);

    /// 2π in 16.16 format, rounded to nearest (2π·65536 = 411774.994…).
    ///
    /// Note this differs by one raw unit from `from_float(2π)`, which
    /// truncates to 411774. Step counts `sweep >> (16 - k)` come out
    /// identical for both values at every k, because 411775 is odd and
    /// never sits on a shift boundary.
    pub const TWO_PI: Fixed = Fixed(411_775);

    pub const FRAC_BITS: u32 = 16;

    #[inline]
    pub const fn from_raw(raw: i32) -> Fixed {
        Fixed(raw)
    }

    #[inline]
    pub const fn raw(self) -> i32 {
        self.0
    }

    /// Whole pixels to fixed point. Must satisfy |v| ≤ 32767.
    #[inline]
    pub const fn from_int(v: i16) -> Fixed {
        Fixed((v as i32) << 16)
    }

    /// Converts from floating point, truncating toward zero.
    ///
    /// Fails for non-finite input or |v| ≥ 32768 (unrepresentable).
    pub fn from_float(v: f64) -> Result<Fixed, OutOfRange> {
        if !v.is_finite() || v.abs() >= 32768.0 {
            return Err(OutOfRange(v));
        }
        Ok(Fixed((v * 65536.0) as i32))
    }

    /// Exact value `raw / 65536` (every raw value is exact in f64).
    #[inline]
    pub fn to_float(self) -> f64 {
        self.0 as f64 / 65536.0
    }

    #[inline]
    pub const fn abs(self) -> Fixed {
        Fixed(self.0.abs())
    }
}

impl fmt::Debug for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fixed({} = {}px)", self.0, self.to_float())
    }
}

impl Add for Fixed {
    type Output = Fixed;
    #[inline]
    fn add(self, rhs: Fixed) -> Fixed {
        Fixed(self.0 + rhs.0)
    }
}

impl Sub for Fixed {
    type Output = Fixed;
    #[inline]
    fn sub(self, rhs: Fixed) -> Fixed {
        Fixed(self.0 - rhs.0)
    }
}

impl AddAssign for Fixed {
    #[inline]
    fn add_assign(&mut self, rhs: Fixed) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Fixed {
    #[inline]
    fn sub_assign(&mut self, rhs: Fixed) {
        self.0 -= rhs.0;
    }
}

impl Neg for Fixed {
    type Output = Fixed;
    #[inline]
    fn neg(self) -> Fixed {
        Fixed(-self.0)
    }
}

/// Arithmetic right shift: floor division of the raw value by 2^k.
impl Shr<u32> for Fixed {
    type Output = Fixed;
    #[inline]
    fn shr(self, k: u32) -> Fixed {
        debug_assert!(k <= 31);
        Fixed(self.0 >> k)
    }
}

/// Input outside the representable range ±32768.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutOfRange(pub f64);

impl fmt::Display for OutOfRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "value {} is outside the 16.16 range (|v| < 32768)", self.0)
    }
}

impl std::error::Error for OutOfRange {}

/// A point or vector with 16.16 fixed-point components.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PointFx {
    pub x: Fixed,
    pub y: Fixed,
}

impl PointFx {
    pub const ORIGIN: PointFx = PointFx {
        x: Fixed::ZERO,
        y: Fixed::ZERO,
    };

    #[inline]
    pub const fn new(x: Fixed, y: Fixed) -> PointFx {
        PointFx { x, y }
    }

    /// Builds a point from pixel coordinates, truncating toward zero.
    pub fn from_px(x: f64, y: f64) -> Result<PointFx, OutOfRange> {
        Ok(PointFx::new(Fixed::from_float(x)?, Fixed::from_float(y)?))
    }

    /// Cross product of two vectors, on raw values in 64 bits.
    ///
    /// Nonzero iff the vectors span the plane; the ellipse and
    /// hyperbola descriptions are degenerate exactly when this is zero
    /// for their conjugate diameter end points.
    #[inline]
    pub fn cross(self, other: PointFx) -> i64 {
        self.x.raw() as i64 * other.y.raw() as i64 - other.x.raw() as i64 * self.y.raw() as i64
    }
}

impl Add for PointFx {
    type Output = PointFx;
    #[inline]
    fn add(self, rhs: PointFx) -> PointFx {
        PointFx::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for PointFx {
    type Output = PointFx;
    #[inline]
    fn sub(self, rhs: PointFx) -> PointFx {
        PointFx::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for PointFx {
    type Output = PointFx;
    #[inline]
    fn neg(self) -> PointFx {
        PointFx::new(-self.x, -self.y)
    }
}
