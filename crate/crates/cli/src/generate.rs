use fuzzyloc_core::instances::{instance_to_json, table1_json};
use fuzzyloc_core::{generate_instance, GeneratorParams};

use crate::args::GenerateArgs;
use crate::{apply_overrides, core_error, write_file, CliError, CliResult};

/// Instance file text for the given flags.
pub fn generated_text(args: &GenerateArgs) -> CliResult<String> {
    if args.table1 {
        if args.model.gamma.is_none() && args.model.logit.is_none() {
            // byte-for-byte copy so the recorded hash still matches
            return Ok(table1_json().to_string());
        }
        let t = fuzzyloc_core::load_table1().map_err(core_error)?;
        return Ok(instance_to_json(&apply_overrides(t, &args.model)?));
    }
    let (Some(n), Some(m)) = (args.n, args.m) else {
        return Err(CliError::Usage("generate needs --n and --m, or --table1".into()));
    };
    let params =
        if args.light { GeneratorParams::light_load(n, m, args.seed) } else { GeneratorParams::new(n, m, args.seed) };
    let instance = generate_instance(&params).map_err(crate::usage_error)?;
    Ok(instance_to_json(&apply_overrides(instance, &args.model)?))
}

pub fn cmd_generate(args: &GenerateArgs) -> CliResult<()> {
    let text = generated_text(args)?;
    match &args.out {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
