pub mod bjorling;
pub mod dsl;
pub mod error;
pub mod family;
pub mod ladder;
pub mod lorentz;
pub mod series;
pub mod singularity;
pub mod surface;
pub mod weierstrass;
