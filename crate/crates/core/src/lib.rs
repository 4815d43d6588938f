pub mod algebroid;
pub mod cli;
pub mod cohomology;
pub mod exactalg;
pub mod fgl;
pub mod series;
pub mod thh;
