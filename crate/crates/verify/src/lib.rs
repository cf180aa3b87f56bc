//! Test-only package. The acceptance suite lives in `tests/acceptance.rs`;
//! as the last package in the workspace it runs after every other suite.
