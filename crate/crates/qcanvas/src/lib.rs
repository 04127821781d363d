//! File formats, batch pipeline and command-line driver built on
//! [`qcanvas_core`].

pub mod io;
pub mod pipeline;
