pub use opspecial;
