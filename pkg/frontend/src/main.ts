/** Browser entry point: mount the app against ?api= or the page's origin. */

import { Client } from './api.js';
import { App } from './app.js';

const params = new URLSearchParams(window.location.search);
const base = params.get('api') ?? window.location.origin;
const root = document.getElementById('app');
if (!root) throw new Error('missing #app mount point');

const app = new App(root, new Client(base));
const sessionId = params.get('session');
void (sessionId ? app.resumeSession(sessionId) : app.init());
