// `!(x > 0.0)` is used on purpose throughout so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod closed_form;
pub mod elliptic;
pub mod kepler;
pub mod numerics;
pub mod oscillator;
pub mod pauli;
