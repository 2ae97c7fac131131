let x = unknown(); let y = x ? '<tag>' + x : '';
let z = '?';
if (y)
  z = y.charAt(4);
if (!z)
  return 'Error';
else return z;
