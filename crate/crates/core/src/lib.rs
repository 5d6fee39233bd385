pub mod qarith;
pub mod rootsystem;
pub mod weylmods;
pub mod classifier;
pub mod sweep;
