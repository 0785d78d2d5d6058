//! Lucas-sequence periods, generalized Wall-Sun-Sun primes and the
//! monogenicity of power-compositional trinomials `x^(2 s^n) - a x^(s^n) - b`.
//!
//! The crate computes both sides of the equivalence "the trinomial is monogenic iff
//! no prime divisor of `s` is an `(a, b)`-Wall-Sun-Sun prime" independently:
//! periods come from companion-matrix order finding ([`lucas`], [`wss`]),
//! index divisibility from Dedekind-style criteria ([`mono`], [`poly`]).

pub mod arith;
pub mod error;
pub mod lucas;
pub mod mono;
pub mod poly;
pub mod wss;

pub use error::{Error, Result};
pub use lucas::{LucasParams, PeriodMethod, PeriodResult, PrimeContext};
pub use mono::{
    CrossValidation, HypothesisReport, IndexRule, MonogenicityReport, PowerCompositionalSpec, QuadElem,
    TrinomialSpec,
};
pub use poly::{IntPoly, ModPoly};
pub use wss::{WssCertificate, WssPath};
