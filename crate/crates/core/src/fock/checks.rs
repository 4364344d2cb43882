//! checks placeholder
