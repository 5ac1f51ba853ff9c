use crate::error::{Error, Result};

/// Positive weights used to measure the total degree of a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grading {
    pub x: i64,
    pub y: i64,
    pub t: i64,
    pub s: i64,
}

impl Default for Grading {
    fn default() -> Self {
        Grading { x: 1, y: 1, t: 1, s: 1 }
    }
}

/// Truncation window.
///
/// Stored terms satisfy `x <= x_max`, `y <= y_max`, `t >= t_min`, `s >= s_min`
/// and have weighted total degree below [`Trunc::precision`]. The upper Laurent
/// bounds `t_max`, `s_max` size the precision and delimit reported coefficients;
/// every coefficient with exponents inside the box is certified exact unless the
/// series itself carries a smaller knowledge region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Trunc {
    pub x_max: u32,
    pub y_max: u32,
    pub t_min: i32,
    pub t_max: i32,
    pub s_min: i32,
    pub s_max: i32,
    pub grading: Grading,
    prec: i64,
}

impl Trunc {
    pub fn new(x_max: u32, t_min: i32, t_max: i32) -> Trunc {
        let mut tr = Trunc {
            x_max,
            y_max: 0,
            t_min,
            t_max,
            s_min: 0,
            s_max: 0,
            grading: Grading::default(),
            prec: 0,
        };
        tr.reset_precision();
        tr
    }

    /// Window for power series in x and y alone, certified to total degree `n`.
    pub fn bivariate(n: u32) -> Trunc {
        Trunc::new(n, 0, 0)
    }

    pub fn with_s(mut self, s_min: i32, s_max: i32) -> Trunc {
        self.s_min = s_min;
        self.s_max = s_max;
        self.reset_precision();
        self
    }

    pub fn with_grading(mut self, grading: Grading) -> Trunc {
        self.grading = grading;
        self.reset_precision();
        self
    }

    pub fn with_y_max(mut self, y_max: u32) -> Trunc {
        self.y_max = y_max;
        self
    }

    /// Moves the x bound while keeping the precision, e.g. for a series that
    /// will be substituted into and so must be known to full degree in x.
    pub fn with_x_max(mut self, x_max: u32) -> Trunc {
        self.x_max = x_max;
        self
    }

    /// Same window with every term of degree up to the precision admitted in x
    /// and y. The Laurent floors drop far enough to hold x^a y^b t^(1-a-b) for
    /// every admitted a and b, as laws pushed along Frobenius-type coordinates need.
    pub fn full_xy(&self) -> Trunc {
        let top = self.prec - 1;
        let mut tr = *self;
        tr.x_max = (top / self.grading.x).max(0) as u32;
        tr.y_max = (top / self.grading.y).max(0) as u32;
        let floor = -(tr.x_max as i32 + tr.y_max as i32) - 1;
        tr.t_min = tr.t_min.min(floor);
        if self.s_max != 0 || self.s_min != 0 {
            tr.s_min = tr.s_min.min(floor);
        }
        tr
    }

    fn reset_precision(&mut self) {
        let g = &self.grading;
        self.prec = g.x * self.x_max as i64 + g.t * self.t_max.max(0) as i64 + g.s * self.s_max.max(0) as i64 + 1;
        self.y_max = ((self.prec - 1) / g.y).max(0) as u32;
    }

    /// Weighted degree at which knowledge stops.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn validate(&self) -> Result<()> {
        if self.t_min > self.t_max || self.s_min > self.s_max {
            return Err(Error::Spec(format!("empty Laurent window {self:?}")));
        }
        if self.t_min > 0 || self.s_min > 0 {
            return Err(Error::Spec("Laurent windows must contain degree 0".into()));
        }
        let g = &self.grading;
        if g.x < 1 || g.y < 1 || g.t < 1 || g.s < 1 {
            return Err(Error::Spec("grading weights must be positive".into()));
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Trunc) -> Result<Trunc> {
        if self.grading != other.grading {
            return Err(Error::Spec("series with different gradings".into()));
        }
        if self == other {
            return Ok(*self);
        }
        Ok(Trunc {
            x_max: self.x_max.min(other.x_max),
            y_max: self.y_max.min(other.y_max),
            t_min: self.t_min.max(other.t_min),
            t_max: self.t_max.min(other.t_max),
            s_min: self.s_min.max(other.s_min),
            s_max: self.s_max.min(other.s_max),
            grading: self.grading,
            prec: self.prec.min(other.prec),
        })
    }

    /// Same window with the x and t bounds moved by the given amounts.
    pub fn widened(&self, dx: u32, dt: i32) -> Trunc {
        let mut tr = *self;
        tr.x_max += dx;
        tr.t_max += dt;
        tr.prec += self.grading.x * dx as i64 + self.grading.t * dt as i64;
        tr.y_max = (((tr.prec - 1) / tr.grading.y).max(0) as u32).max(self.y_max);
        tr
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_counts_box_corner() {
        let tr = Trunc::new(27, -27, 4);
        assert_eq!(tr.precision(), 32);
        assert_eq!(tr.y_max, 31);
        assert_eq!(Trunc::bivariate(8).precision(), 9);
    }

    #[test]
    fn validation() {
        assert!(Trunc::new(3, 1, 4).validate().is_err());
        assert!(Trunc::new(3, -2, -4).validate().is_err());
        assert!(Trunc::new(3, -2, 4).validate().is_ok());
    }
}
