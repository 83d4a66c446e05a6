import { mount } from './app.js';

// The service default port; override with ?api=<origin> during development.
const params = new URLSearchParams(window.location.search);
const baseUrl = params.get('api') ?? 'http://127.0.0.1:8642';

mount(document, baseUrl);
