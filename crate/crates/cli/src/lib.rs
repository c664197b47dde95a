//! Command implementations and report rendering behind the `choquet-rn`
//! binary, shared with the Python bindings.

pub mod commands;
pub mod registry;
pub mod render;
pub mod report;
