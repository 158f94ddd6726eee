//! Library side of the `wpp-mori` command-line tool.

pub mod commands;
pub mod scan;
pub mod table;

pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Exit code for an error: 3 when a computation budget ran out, 2 otherwise.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    let resource = err
        .chain()
        .any(|e| e.downcast_ref::<wpp_mori::Error>().is_some_and(wpp_mori::Error::is_resource));
    if resource {
        EXIT_RESOURCE
    } else {
        EXIT_INVALID_INPUT
    }
}
