#![allow(dead_code)]

pub mod charpoly;
