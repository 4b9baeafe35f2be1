//! Which ordering to build, and dispatch to the generators.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hilbert::hilbert_general;
use crate::hybrid::{hybrid_order, HybridSpec};
use crate::model::{row_major_path, CurvePath, Dims3};
use crate::morton::morton_general;

/// A single-level ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseOrder {
    RowMajor,
    Morton,
    Hilbert { allow_odd: bool },
}

impl BaseOrder {
    pub const ALL: [BaseOrder; 3] = [
        BaseOrder::RowMajor,
        BaseOrder::Morton,
        BaseOrder::Hilbert { allow_odd: false },
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BaseOrder::RowMajor => "rowmajor",
            BaseOrder::Morton => "morton",
            BaseOrder::Hilbert { .. } => "hilbert",
        }
    }

    /// Same ordering with the odd-extent permission for Hilbert set to `allow_odd`.
    pub fn with_allow_odd(self, allow_odd: bool) -> Self {
        match self {
            BaseOrder::Hilbert { .. } => BaseOrder::Hilbert { allow_odd },
            other => other,
        }
    }

    /// Checks that `dims` can be ordered without generating anything.
    pub fn validate(&self, dims: Dims3) -> Result<()> {
        match self {
            BaseOrder::Hilbert { allow_odd: false } => crate::hilbert::check_even(dims),
            _ => Ok(()),
        }
    }

    pub fn generate(&self, dims: Dims3) -> Result<CurvePath> {
        match *self {
            BaseOrder::RowMajor => Ok(row_major_path(dims)),
            BaseOrder::Morton => Ok(morton_general(dims)),
            BaseOrder::Hilbert { allow_odd } => hilbert_general(dims, allow_odd),
        }
    }
}

impl fmt::Display for BaseOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BaseOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "rowmajor" => Ok(BaseOrder::RowMajor),
            "morton" => Ok(BaseOrder::Morton),
            "hilbert" => Ok(BaseOrder::Hilbert { allow_odd: false }),
            "hybrid" => Err(Error::InvalidSpec(
                "hybrid orderings cannot be nested inside a hybrid".into(),
            )),
            other => Err(Error::InvalidSpec(format!(
                "unknown ordering {other:?}, expected rowmajor, morton, hilbert or hybrid"
            ))),
        }
    }
}

/// Any ordering the crate can build: a base ordering or a one-level hybrid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderingSpec {
    Base(BaseOrder),
    Hybrid(HybridSpec),
}

impl OrderingSpec {
    /// Builds a spec from the command-line style pieces: a kind name, plus
    /// block extents and inter/intra names for `hybrid`.
    pub fn from_parts(
        kind: &str,
        block: Option<Dims3>,
        inter: Option<&str>,
        intra: Option<&str>,
        allow_odd: bool,
    ) -> Result<Self> {
        if kind.trim() != "hybrid" {
            return Ok(OrderingSpec::Base(
                kind.parse::<BaseOrder>()?.with_allow_odd(allow_odd),
            ));
        }
        let missing = |what: &str| Error::InvalidSpec(format!("hybrid ordering needs {what}"));
        let block = block.ok_or_else(|| missing("block extents"))?;
        let inter: BaseOrder = inter
            .ok_or_else(|| missing("an inter-block ordering"))?
            .parse()?;
        let intra: BaseOrder = intra
            .ok_or_else(|| missing("an intra-block ordering"))?
            .parse()?;
        Ok(OrderingSpec::Hybrid(HybridSpec {
            block,
            inter: inter.with_allow_odd(allow_odd),
            intra: intra.with_allow_odd(allow_odd),
        }))
    }

    pub fn validate(&self, dims: Dims3) -> Result<()> {
        match self {
            OrderingSpec::Base(base) => base.validate(dims),
            OrderingSpec::Hybrid(spec) => spec.validate(dims).map(|_| ()),
        }
    }

    pub fn generate(&self, dims: Dims3) -> Result<CurvePath> {
        match self {
            OrderingSpec::Base(base) => base.generate(dims),
            OrderingSpec::Hybrid(spec) => hybrid_order(dims, spec),
        }
    }
}

impl From<BaseOrder> for OrderingSpec {
    fn from(base: BaseOrder) -> Self {
        OrderingSpec::Base(base)
    }
}

impl fmt::Display for OrderingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingSpec::Base(base) => base.fmt(f),
            OrderingSpec::Hybrid(h) => write!(f, "hybrid:{}:{}:{}", h.block, h.inter, h.intra),
        }
    }
}

impl FromStr for OrderingSpec {
    type Err = Error;

    /// Parses the display form: `rowmajor`, `morton`, `hilbert`, or
    /// `hybrid:<pxnxm>:<inter>:<intra>`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            [base] => OrderingSpec::from_parts(base, None, None, None, false),
            ["hybrid", block, inter, intra] => OrderingSpec::from_parts(
                "hybrid",
                Some(block.parse()?),
                Some(inter),
                Some(intra),
                false,
            ),
            _ => Err(Error::InvalidSpec(format!("cannot parse ordering {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in [
            "rowmajor",
            "morton",
            "hilbert",
            "hybrid:2x2x2:morton:rowmajor",
        ] {
            assert_eq!(s.parse::<OrderingSpec>().unwrap().to_string(), s);
        }
        assert!("zorder".parse::<OrderingSpec>().is_err());
        assert!("hybrid".parse::<OrderingSpec>().is_err());
    }

    #[test]
    fn hybrid_never_nests() {
        let block = Dims3::new(2, 2, 2).ok();
        assert!(matches!(
            OrderingSpec::from_parts("hybrid", block, Some("hybrid"), Some("morton"), false),
            Err(Error::InvalidSpec(_))
        ));
        assert!(
            OrderingSpec::from_parts("hybrid", None, Some("morton"), Some("morton"), false)
                .is_err()
        );
    }

    #[test]
    fn allow_odd_reaches_every_hilbert() {
        let spec = OrderingSpec::from_parts(
            "hybrid",
            Dims3::new(1, 1, 1).ok(),
            Some("hilbert"),
            Some("hilbert"),
            true,
        )
        .unwrap();
        let OrderingSpec::Hybrid(h) = spec else {
            panic!()
        };
        assert_eq!(h.inter, BaseOrder::Hilbert { allow_odd: true });
        assert_eq!(h.intra, BaseOrder::Hilbert { allow_odd: true });
        assert_eq!(
            OrderingSpec::from_parts("morton", None, None, None, true).unwrap(),
            OrderingSpec::Base(BaseOrder::Morton)
        );
    }
}
