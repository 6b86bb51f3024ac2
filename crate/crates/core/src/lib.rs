pub mod certificate;
pub mod driver;
pub mod corpus;
pub mod ep;
pub mod error;
pub mod graph;
pub mod profile;
pub mod search;
pub mod split;
pub mod trail;
pub mod transform;
