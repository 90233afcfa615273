pub mod cyclotomic;
pub mod error;
pub mod f2;
pub mod group;
pub mod spectral;
pub mod walsh;
pub mod cubelike;
pub mod hetero;
pub mod oracle;
pub mod corpus;
