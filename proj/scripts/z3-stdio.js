#!/usr/bin/env node
// SMT-LIB v2 stdio shim around the z3-solver WASM build.
// Reads a complete script on stdin, prints the solver output on stdout.
// Behaves like `z3 -in` for one-shot (non-interactive) sessions.

const { init } = require("z3-solver");

async function main() {
  const chunks = [];
  for await (const chunk of process.stdin) chunks.push(chunk);
  const script = Buffer.concat(chunks).toString("utf8");

  const { Z3 } = await init();
  const cfg = Z3.mk_config();
  const ctx = Z3.mk_context(cfg);
  let out;
  try {
    out = await Z3.eval_smtlib2_string(ctx, script);
  } catch (err) {
    process.stdout.write(`(error "${String(err).replace(/"/g, "'")}")\n`);
    process.exit(1);
  }
  process.stdout.write(out, () => process.exit(0));
}

main();
