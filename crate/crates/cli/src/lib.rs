//! Front end for `milnor-core`: class expressions, input formats, command
//! runners and report rendering.

pub mod commands;
pub mod error;
pub mod expr;
pub mod input;
pub mod report;
pub mod verify;
