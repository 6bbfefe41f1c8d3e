pub mod berge;
pub mod boundslab;
pub mod extremal;
pub mod hypercore;
pub mod matchdecomp;
mod par;
