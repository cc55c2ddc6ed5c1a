/**
 * Vitest global setup: run the real HTTP service for the duration of the
 * suite. The UI is stateless, so every test file talks to this one server
 * with its own uploaded context.
 */

import { spawn } from 'node:child_process';
import { mkdtempSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { API_BASE } from './config.js';

export default async function setup(): Promise<() => void> {
  const store = mkdtempSync(join(tmpdir(), 'rowguard-ui-'));
  const port = new URL(API_BASE).port;
  const child = spawn(
    'python3',
    ['-m', 'rowguard.cli', 'serve', '--store', store, '--port', port],
    { stdio: 'ignore' },
  );
  const deadline = Date.now() + 30000;
  for (;;) {
    try {
      const response = await fetch(`${API_BASE}/health`);
      if (response.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      child.kill();
      throw new Error('rowguard serve did not come up on ' + API_BASE);
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
  return () => {
    child.kill();
  };
}
