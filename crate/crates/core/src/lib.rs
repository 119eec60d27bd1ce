pub mod assembler;
pub mod bench;
pub mod c_front;
pub mod diff_verify;
pub mod javafmt;
pub mod llm_client;
pub mod pipeline;
pub mod rule_xlat;
pub mod sanitizer;
