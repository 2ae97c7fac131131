let x = 'fstTag'; let y = 'secondTag'; let z = '<' + x + '>' + unknown() + '</' + x + '>';
while (unknown())
  z = '<' + y + '>' + z;
let w = '<' + (unknown() ? x : y) + '>';
z = z.substring(1);
if (z.indexOf(w) == 0)
  return 'Error';
