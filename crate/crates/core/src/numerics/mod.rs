//! Rigorous real arithmetic: dyadic numbers with directed rounding, interval enclosures,
//! stored constants, digamma/trigamma, and the precision-escalating comparison engine.

pub mod constants;
mod decide;
mod dyadic;
mod interval;
mod literals;
pub mod special;

pub use decide::{decide, decide_intervals, decide_pair, Decision, PrecisionPolicy, Verdict};
pub use dyadic::{Dyadic, Round};
pub use interval::{cmp_ratio_interval, Interval};
pub use special::{digamma, trigamma};
