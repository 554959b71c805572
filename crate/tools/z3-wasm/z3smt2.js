#!/usr/bin/env node
// Runs one SMT-LIB2 script through the Z3 WebAssembly build and prints the
// solver output (verdict plus any model) on stdout.
//
// Usage: node z3smt2.js SCRIPT.smt2
//
// Exit codes: 0 solver ran (verdict on stdout), 2 usage or I/O error,
// 3 solver initialization failure.

'use strict';

const fs = require('fs');

async function main() {
  const path = process.argv[2];
  if (!path) {
    process.stderr.write('usage: z3smt2.js SCRIPT.smt2\n');
    process.exit(2);
  }
  let script;
  try {
    script = fs.readFileSync(path, 'utf8');
  } catch (err) {
    process.stderr.write(`cannot read ${path}: ${err.message}\n`);
    process.exit(2);
  }

  let api;
  try {
    api = await require('z3-solver').init();
  } catch (err) {
    process.stderr.write(`z3 init failed: ${err.message}\n`);
    process.exit(3);
  }
  const { Z3 } = api;
  const cfg = Z3.mk_config();
  const ctx = Z3.mk_context(cfg);
  Z3.del_config(cfg);
  try {
    const out = await Z3.eval_smtlib2_string(ctx, script);
    process.stdout.write(out.endsWith('\n') ? out : out + '\n');
  } catch (err) {
    process.stderr.write(`z3 evaluation failed: ${err.message}\n`);
    process.exit(3);
  } finally {
    Z3.del_context(ctx);
  }
  // The WASM build keeps worker threads alive; end the process explicitly.
  process.exit(0);
}

main();
