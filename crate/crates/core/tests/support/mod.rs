pub mod oracles;
pub mod stub;
pub mod tune_oracle;
